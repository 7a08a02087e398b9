#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "gauge.hpp"
#include "partialwave.hpp"
#include "propagator.hpp"
#include "topo.hpp"

namespace ciscat {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
// Angles closer than this to the forward direction are left out of the
// comparison with the pure flux-tube curve, which diverges there.
constexpr double kForwardWindow = 0.1 * kPi;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

class Bundle {
 public:
  Bundle(const std::string& dir, ScenarioResult& result) : dir_(dir), result_(result) {
    std::error_code ec;
    fs::create_directories(dir_ / "analysis", ec);
    if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  }

  std::ofstream open(const std::string& rel) {
    std::ofstream out(dir_ / rel, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write '" + (dir_ / rel).string() + "'");
    result_.files.push_back(rel);
    return out;
  }

  std::string path(const std::string& rel) {
    result_.files.push_back(rel);
    return (dir_ / rel).string();
  }

 private:
  fs::path dir_;
  ScenarioResult& result_;
};

void put(ScenarioResult& r, const std::string& key, double v) { r.summary.emplace_back(key, v); }

void write_summary(Bundle& bundle, const ScenarioResult& r) {
  auto out = bundle.open("analysis/summary.csv");
  out << "key,value\n";
  for (const auto& [k, v] : r.summary) out << k << "," << num(v) << "\n";
}

void write_echo(Bundle& bundle, const ScenarioConfig& config) {
  auto out = bundle.open("config.echo.ini");
  out << echo_config(config);
}

void analyse_scalar(const ScalarField& psi, const ScenarioConfig& config, Bundle& bundle,
                    ScenarioResult& result, const std::string& tag) {
  const DislocationSet set = dislocation_lines(psi, config.dislocation_options());
  {
    auto out = bundle.open("analysis/" + tag + ".csv");
    out << "segment,xi,eta\n";
    for (std::size_t s = 0; s < set.segments.size(); ++s)
      for (const Point2& p : set.segments[s].points) out << s << "," << num(p.x) << "," << num(p.y) << "\n";
  }
  {
    auto out = bundle.open("analysis/" + tag + "_segments.csv");
    out << "segment,cells,length,suppression,phase_jump,xi_first,eta_first,xi_last,eta_last,intercept,slope\n";
    for (std::size_t s = 0; s < set.segments.size(); ++s) {
      const DislocationSegment& seg = set.segments[s];
      const auto [a, b] = seg.fit_line();
      out << s << "," << seg.cells << "," << num(seg.length()) << "," << num(seg.suppression) << ","
          << num(seg.phase_jump) << "," << num(seg.points.front().x) << "," << num(seg.points.front().y)
          << "," << num(seg.points.back().x) << "," << num(seg.points.back().y) << "," << num(a) << ","
          << num(b) << "\n";
    }
  }
  const Grid2D& g = psi.grid;
  const int dir = config.direction;
  // Downstream limit: the inner edge of the absorbing band when there is one.
  const double band = config.kind == ScenarioKind::Propagate && config.absorber == "mask"
                          ? config.absorber_margin * (g.xi_max() - g.xi_min())
                          : 0.0;
  const double xi_limit = dir > 0 ? g.xi_max() - band : g.xi_min() + band;
  const AxisReport axis = axis_segment(set, config.eta0, 0.0, xi_limit, config.axis_tolerance, dir);
  put(result, "segments", static_cast<double>(set.segments.size()));
  put(result, "marked_cells", set.marked_cells);
  put(result, "axis_segment", axis.found ? 1.0 : 0.0);
  put(result, "axis_pieces", axis.pieces);
  put(result, "axis_start", axis.found ? axis.xi_start : std::nan(""));
  put(result, "axis_end", axis.found ? axis.xi_end : std::nan(""));
  put(result, "axis_start_cells", axis.found ? axis.xi_start / g.h_xi() : std::nan(""));
  put(result, "axis_coverage", axis.coverage);
  put(result, "axis_max_offset", axis.found ? axis.max_offset : std::nan(""));

  if (config.charge_radius > 0.0) {
    LoopOptions opts;
    opts.open_gap = config.charge_gap * g.h_xi() / (2.0 * kPi * config.charge_radius);
    try {
      const PhaseLoopResult c = charge_at_point(psi, {config.charge_x, config.charge_y},
                                                config.charge_radius, config.charge_angle, opts);
      put(result, "charge", c.charge);
      put(result, "charge_converged", c.converged ? 1.0 : 0.0);
    } catch (const Error& e) {
      put(result, "charge", std::nan(""));
      result.messages.push_back(std::string("charge: ") + e.what());
    }
  }
}

void run_propagate(const ScenarioConfig& config, Bundle& bundle, ScenarioResult& result) {
  const PropagationConfig pc = config.propagation();
  validate(pc);
  const bool adiabatic = config.dump_picture == "adiabatic";
  const FieldEncoding enc = config.dump_encoding == "ascii" ? FieldEncoding::Ascii : FieldEncoding::Binary;
  UnitaryField frames;
  if (adiabatic || config.dislocations) frames = frame_field(pc.model, pc.grid);
  SpinorField last;
  int snapshots = 0;
  const auto diagnostics = run_streaming(pc, [&](int index, const SpinorField& f) {
    const std::string rel = "snap_" + std::to_string(index) + ".field";
    write_field(bundle.path(rel), adiabatic ? to_adiabatic(f, frames) : f, enc);
    last = f;
    ++snapshots;
  });
  {
    auto out = bundle.open("diagnostics.csv");
    out << "step,tau,norm,p_ground,p_excited,absorbed,backscatter\n";
    for (const DiagnosticRecord& d : diagnostics)
      out << d.step << "," << num(d.tau) << "," << num(d.norm) << "," << num(d.p_ground) << ","
          << num(d.p_excited) << "," << num(d.absorbed) << "," << num(d.backscatter) << "\n";
  }
  const DiagnosticRecord& f = diagnostics.back();
  put(result, "steps", f.step);
  put(result, "tau_final", f.tau);
  put(result, "norm", f.norm);
  put(result, "p_ground", f.p_ground);
  put(result, "p_excited", f.p_excited);
  put(result, "excited_fraction", f.p_excited / f.norm);
  put(result, "absorbed", f.absorbed);
  put(result, "backscatter", f.backscatter);
  put(result, "snapshots", snapshots);
  if (config.dislocations) {
    const SpinorField fa = to_adiabatic(last, frames);
    analyse_scalar(channel(fa, config.channel), config, bundle, result, "dislocations");
  }
  std::ostringstream msg;
  msg << "p_excited/norm = " << f.p_excited / f.norm << " at tau = " << f.tau;
  result.messages.push_back(msg.str());
}

void run_surfaces(const ScenarioConfig& config, Bundle& bundle, ScenarioResult& result) {
  const TwoStatePotential model = config.potential_model();
  const int n = config.surface_points;
  const double ext = config.surface_extent;
  std::vector<double> xs(n), lower(n);
  {
    auto out = bundle.open("analysis/surfaces.csv");
    out << "xi,e_ground,e_excited\n";
    for (int i = 0; i < n; ++i) {
      const double x = -ext + 2.0 * ext * (i + 0.5) / n;
      const auto [em, ep] = model.eigenvalues(x, config.eta0);
      const double s = model.scalar(x, config.eta0);
      xs[i] = x;
      lower[i] = em + s;
      out << num(x) << "," << num(em + s) << "," << num(ep + s) << "\n";
    }
  }
  auto out = bundle.open("analysis/beta_levels.csv");
  out << "beta,energy,turning_point\n";
  for (double beta : {1.0, 0.5, 0.125}) {
    // Total energy measured from the ground asymptote -delta.
    const double e = -config.delta + beta * config.delta;
    double turning = std::nan("");
    for (int i = 0; i < n; ++i)
      if (lower[i] >= e) {
        turning = xs[i];
        break;
      }
    out << num(beta) << "," << num(e) << "," << num(turning) << "\n";
    put(result, "turning_point_beta_" + num(beta), turning);
  }
}

void write_cross_section(const ScenarioConfig& config, const PartialWaveSolution& sol, Bundle& bundle,
                         ScenarioResult& result) {
  const int n = config.n_theta;
  std::vector<double> thetas(n);
  // Midpoint angles never land on the forward direction theta = pi.
  for (int i = 0; i < n; ++i) thetas[i] = 2.0 * kPi * (i + 0.5) / n;
  const std::vector<double> xs = differential_cross_section(sol, thetas);
  auto out = bundle.open("analysis/crosssection.csv");
  out << (config.compare_ab ? "theta,k_dsigma,pure_ab,rel_dev\n" : "theta,k_dsigma\n");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    out << num(thetas[i]) << "," << num(xs[i]);
    if (config.compare_ab) {
      const double ab = xs_pure_ab(config.alpha, thetas[i]) / (2.0 * kPi);
      const double dev = ab > 0.0 ? std::abs(xs[i] - ab) / ab : std::nan("");
      out << "," << num(ab) << "," << num(dev);
      if (std::abs(thetas[i] - kPi) >= kForwardWindow && std::isfinite(dev)) worst = std::max(worst, dev);
    }
    out << "\n";
  }
  put(result, "m_max", sol.m_max);
  if (config.compare_ab) put(result, "max_rel_dev_away_from_forward", worst);
}

void run_cross_section(const ScenarioConfig& config, Bundle& bundle, ScenarioResult& result) {
  SolveOptions opts;
  const PartialWaveSolution sol = solve(config.radial_potential(), config.alpha, config.k, opts);
  write_cross_section(config, sol, bundle, result);
}

void run_field(const ScenarioConfig& config, Bundle& bundle, ScenarioResult& result) {
  const PartialWaveSolution sol = solve(config.radial_potential(), config.alpha, config.k);
  write_cross_section(config, sol, bundle, result);
  const Grid2D grid = config.grid();
  const double inner = config.potential == "hard_disk" ? config.radius : 0.0;
  SpinorField dump(grid);
  ScalarField psi(grid);
  for (int i = 0; i < grid.n_xi(); ++i)
    for (int j = 0; j < grid.n_eta(); ++j) {
      const double x = grid.xi(i), y = grid.eta(j);
      const double r = std::hypot(x, y);
      const cplx v = r < inner || r < sol.r_c ? cplx{} : psi_total_fast(r, std::atan2(y, x), sol);
      psi(i, j) = v;
      dump.g1[grid.index(i, j)] = v;
    }
  write_field(bundle.path("snap_0.field"), dump,
              config.dump_encoding == "ascii" ? FieldEncoding::Ascii : FieldEncoding::Binary);
  if (config.dislocations) analyse_scalar(psi, config, bundle, result, "dislocations");
}

void run_wilson(const ScenarioConfig& config, Bundle& bundle, ScenarioResult& result) {
  const TwoStatePotential model = config.potential_model();
  const RealPairModel pair = model.real_pair();
  AbelianField field;
  std::vector<Point2> cis;
  if (model.kind() == ModelKind::TwoCI) {
    const double x0 = config.x0;
    field = [x0](double x, double y) { return two_ci_gauge(x, y, x0); };
    cis = {{0.0, 0.0}, {x0, 0.0}};
  } else {
    field = projected_gauge_field(pair);
    const double reach = std::hypot(config.loop_x, config.loop_y) + 2.0 * config.loop_radius + 1.0;
    cis = find_cis(pair, {-reach, reach, -reach, reach}).points;
  }
  const LoopPath loop = LoopPath::circle({config.loop_x, config.loop_y}, config.loop_radius);
  const WilsonResult w = wilson_loop(field, loop, cis);
  std::vector<Point2> enclosed;
  for (const Point2& p : cis)
    if (loop.winding_about(p) != 0) enclosed.push_back(p);
  const int predicted = wilson_sign_predicted(pair, enclosed);
  auto clean = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
  char line[96];
  std::snprintf(line, sizeof line, "wilson = %.6f%+.6fi", clean(w.value.real()), clean(w.value.imag()));
  result.messages.push_back(line);
  put(result, "wilson_re", w.value.real());
  put(result, "wilson_im", w.value.imag());
  put(result, "integral", w.integral);
  put(result, "samples", w.samples);
  put(result, "enclosed_cis", static_cast<double>(enclosed.size()));
  put(result, "predicted_sign", predicted);
  auto out = bundle.open("analysis/wilson.csv");
  out << "loop_x,loop_y,loop_radius,re,im,integral,predicted\n";
  out << num(config.loop_x) << "," << num(config.loop_y) << "," << num(config.loop_radius) << ","
      << num(w.value.real()) << "," << num(w.value.imag()) << "," << num(w.integral) << "," << predicted
      << "\n";
}

}  // namespace

double ScenarioResult::value(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& outdir) {
  ScenarioResult result;
  Bundle bundle(outdir, result);
  write_echo(bundle, config);
  switch (config.kind) {
    case ScenarioKind::Propagate: run_propagate(config, bundle, result); break;
    case ScenarioKind::Surfaces: run_surfaces(config, bundle, result); break;
    case ScenarioKind::CrossSection: run_cross_section(config, bundle, result); break;
    case ScenarioKind::Field: run_field(config, bundle, result); break;
    case ScenarioKind::Wilson: run_wilson(config, bundle, result); break;
  }
  write_summary(bundle, result);
  return result;
}

ScenarioResult analyse_dump(const std::string& field_path, const ScenarioConfig& config,
                            const std::string& outdir) {
  ScenarioResult result;
  const SpinorField field = read_field(field_path);
  Bundle bundle(outdir, result);
  write_echo(bundle, config);
  analyse_scalar(channel(field, config.channel), config, bundle, result, "dislocations");
  write_summary(bundle, result);
  return result;
}

std::vector<std::string> list_scenarios() {
  std::vector<std::string> lines;
  for (const PresetInfo& p : presets())
    lines.push_back(p.name + "\t" + subcommand_of(p.kind) + "\t" + p.figure + "\t" + p.description);
  return lines;
}

}  // namespace ciscat
