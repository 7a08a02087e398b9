// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fail.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "gauge.hpp"
#include "models.hpp"
#include "partialwave.hpp"
#include "propagator.hpp"
#include "scenario.hpp"
#include "special.hpp"
#include "topo.hpp"

using namespace ciscat;
using std::numbers::pi;

namespace {

std::mt19937_64 rng(7);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

// ---- 1
void pure_flux_tube(Outcome& o) {
  const std::vector<double> thetas{0.0, pi / 2, -pi / 2, 3 * pi / 4, -3 * pi / 4};
  double worst = 0.0;
  for (double k : {0.5, 1.0, 2.0}) {
    const PartialWaveSolution sol = solve(RadialPotential::none(), 0.5, k);
    const std::vector<double> xs = differential_cross_section(sol, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const double want = xs_pure_ab(0.5, thetas[i]) / (2 * pi);
      worst = std::max(worst, std::abs(xs[i] - want) / want);
    }
  }
  o.detail << "max rel dev " << worst << " over k=0.5,1,2 ";
  o.require(worst < 0.005, "rel dev < 0.5%");
}

// ---- 2
void low_energy_overlap(Outcome& o) {
  const PartialWaveSolution sol = solve(RadialPotential::hard_disk(1.0), 0.5, 0.01);
  std::vector<double> thetas;
  for (int i = 0; i < 360; ++i) thetas.push_back(2 * pi * (i + 0.5) / 360 - pi);
  const std::vector<double> xs = differential_cross_section(sol, thetas);
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (pi - std::abs(thetas[i]) < 0.1 * pi) continue;
    const double pure = xs_pure_ab(0.5, thetas[i]) / (2 * pi);
    worst = std::max(worst, std::abs(xs[i] - pure) / pure);
  }
  o.detail << "max rel dev " << worst << " with |theta| <= 0.9 pi ";
  o.require(worst < 0.02, "rel dev < 2%");
}

// ---- 3
RealPairModel quadratic_pair(const std::array<double, 6>& a, const std::array<double, 6>& b) {
  auto q = [](const std::array<double, 6>& c) {
    return [c](double x, double y) {
      return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
    };
  };
  return {q(a), q(b), {}};
}

void wilson_theorem(Outcome& o) {
  const double x0 = 3.0;
  const AbelianField a = [x0](double x, double y) { return two_ci_gauge(x, y, x0); };
  const std::vector<Point2> cis{{0, 0}, {x0, 0}};
  const cplx inner = wilson_loop(a, LoopPath::circle({0, 0}, 1.0), cis).value;
  const cplx both = wilson_loop(a, LoopPath::circle({1.5, 0}, 3.0), cis).value;
  o.detail << "one CI " << inner.real() << ", both " << both.real() << "; ";
  o.require(std::abs(inner + 1.0) < 1e-6, "one CI gives -1");
  o.require(std::abs(both - 1.0) < 1e-6, "both CIs give +1");

  const Region region{-3, 3, -3, 3};
  int models = 0, agree = 0;
  for (int attempt = 0; attempt < 4000 && models < 20; ++attempt) {
    std::array<double, 6> ca{}, cb{};
    for (double& c : ca) c = uniform(-1, 1);
    for (double& c : cb) c = uniform(-1, 1);
    const RealPairModel m = quadratic_pair(ca, cb);
    const CISearchResult found = find_cis(m, region, 96);
    if (found.points.empty() || !found.unresolved.empty()) continue;
    const Point2 centre{uniform(-1, 1), uniform(-1, 1)};
    const double radius = uniform(0.5, 1.8);
    std::vector<Point2> enclosed;
    bool clear = true;
    for (const Point2& p : found.points) {
      const double d = std::hypot(p.x - centre.x, p.y - centre.y);
      if (std::abs(d - radius) < 0.15) clear = false;
      if (d < radius) enclosed.push_back(p);
    }
    if (!clear) continue;
    const LoopPath loop = LoopPath::circle(centre, radius);
    const WilsonResult w = wilson_loop(projected_gauge_field(m), loop, found.points);
    const int predicted = wilson_sign_predicted(m, enclosed);
    ++models;
    if (std::abs(w.value - cplx(predicted, 0.0)) < 1e-6) ++agree;
  }
  o.detail << "predictor agrees on " << agree << "/" << models << " random models";
  o.require(models == 20 && agree == 20, "20/20 random models");
}

// ---- 4
void topological_charges(Outcome& o) {
  const ComplexFunction ab = [](double x, double y) {
    return psi_ab(std::hypot(x, y), std::atan2(y, x), 1.0);
  };
  const double half = charge_at_point(ab, {0, 0}, 2.0, pi).charge;
  const ComplexFunction pair = [](double x, double y) {
    return cylinder(0.5, std::hypot(x, y)).j * (1.0 + std::exp(cplx(0, std::atan2(y, x))));
  };
  const double half2 = charge_at_point(pair, {0, 0}, 1.5, pi).charge;
  double worst_int = 0.0;
  for (int m = -5; m <= 5; ++m) {
    const ComplexFunction f = [m](double x, double y) {
      return std::exp(cplx(0, m * std::atan2(y, x))) * std::hypot(x, y);
    };
    LoopOptions opts;
    opts.min_samples = 512;
    const double q = topological_charge(f, LoopPath::circle({0, 0}, 1.0), opts).charge;
    worst_int = std::max(worst_int, std::abs(q - m));
  }
  o.detail << "flux-tube field " << half << ", half-integer pair " << half2 << ", integer fields max err "
           << worst_int;
  o.require(std::abs(half - 0.5) < 1e-3, "flux-tube field 1/2");
  o.require(std::abs(half2 - 0.5) < 1e-3, "half-integer pair 1/2");
  o.require(worst_int < 1e-12, "integer charges exact");
}

// ---- 5, 6
struct Fig6 {
  std::string dir;
  std::map<std::string, ScenarioResult> runs;
  const ScenarioResult& get(const std::string& name) {
    auto it = runs.find(name);
    if (it != runs.end()) return it->second;
    std::fprintf(stderr, "running %s...\n", name.c_str());
    return runs[name] = run_scenario(preset_config(name), dir + "/" + name);
  }
};

void leakage(Outcome& o, Fig6& fig6) {
  const ScenarioResult& r = fig6.get("fig6_row1_left");
  const double frac = r.value("excited_fraction");
  o.detail << "excited/surviving = " << frac << " at tau = " << r.value("tau_final");
  o.require(frac < 0.01, "below 1%");
}

void dislocation_persistence(Outcome& o, Fig6& fig6) {
  const char* rows[] = {"row1", "row2", "row3"};
  const char* betas[] = {"1", "1/2", "1/8"};
  std::vector<double> starts;
  for (int i = 0; i < 3; ++i) {
    const std::string row = rows[i];
    const ScenarioResult& left = fig6.get("fig6_" + row + "_left");
    const ScenarioResult& right = fig6.get("fig6_" + row + "_right");
    const bool has_left = left.value("axis_segment") == 1.0;
    const bool has_right = right.value("axis_segment") == 1.0;
    o.detail << "beta=" << betas[i] << ": H' " << (has_left ? "segment" : "none");
    if (has_left) {
      starts.push_back(left.value("axis_start_cells"));
      o.detail << " from cell " << starts.back() << " cov " << left.value("axis_coverage");
    }
    o.detail << " charge " << left.value("charge");
    o.detail << ", H'' " << (has_right ? "segment" : "none") << "; ";
    o.require(has_left, std::string("H' segment at beta=") + betas[i]);
    o.require(!has_right, std::string("no H'' segment at beta=") + betas[i]);
  }
  if (starts.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(starts.begin(), starts.end());
    o.detail << "endpoint drift " << *hi - *lo << " cells";
    o.require(*hi - *lo < 2.0, "drift < 2 cells");
  }
}

// ---- 7
double distance(const SpinorField& a, const SpinorField& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.g1.size(); ++n)
    s += std::norm(a.g1[n] - b.g1[n]) + std::norm(a.g2[n] - b.g2[n]);
  return std::sqrt(s * a.grid.cell_area());
}

Mat2 expm_series(const Mat2& a) {
  const double size = std::max({std::abs(a.a11), std::abs(a.a12), std::abs(a.a21), std::abs(a.a22)});
  int s = 0;
  while (size / std::ldexp(1.0, s) > 0.25) ++s;
  const Mat2 b = a * cplx(std::ldexp(1.0, -s));
  Mat2 sum = Mat2::identity(), term = Mat2::identity();
  for (int n = 1; n <= 30; ++n) {
    term = term * b * cplx(1.0 / n);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

void propagator_integrity(Outcome& o) {
  PropagationConfig c;
  c.grid = Grid2D(128, 128, -20, 20, -20, 20);
  c.packet.xi0 = -12.0;
  c.packet.sigma_long = 1.5;
  c.packet.half_width = 3.0;
  c.packet.rolloff = 2.0;
  c.absorber.kind = AbsorberSpec::Kind::None;
  const SpinorField f0 = prepare_packet(c);

  SpinorField f = f0;
  Propagator(c.grid, c.model, 0.005).advance(f, 10000);
  const double drift = std::abs(norm(f) - 1.0);

  std::vector<SpinorField> out;
  for (double dt : {0.02, 0.01, 0.005}) {
    SpinorField g = f0;
    Propagator(c.grid, c.model, dt).advance(g, static_cast<int>(std::lround(3.0 / dt)));
    out.push_back(std::move(g));
  }
  const double ratio = distance(out[0], out[1]) / distance(out[1], out[2]);

  double series = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double h = uniform(-4, 4), dt = uniform(0.001, 1.0);
    const cplx cc(uniform(-4, 4), uniform(-4, 4));
    const Mat2 hm{h, cc, std::conj(cc), -h};
    series = std::max(series, max_abs_diff(potential_propagator(h, cc, dt), expm_series(hm * cplx(0, -dt))));
  }

  const Grid2D g(256, 256, -40, 40, -40, 40);
  const double sigma = 2.0;
  SpinorField gauss(g);
  for (int i = 0; i < g.n_xi(); ++i)
    for (int j = 0; j < g.n_eta(); ++j)
      gauss.g2[g.index(i, j)] = std::exp(-(g.xi(i) * g.xi(i) + g.eta(j) * g.eta(j)) / (2 * sigma * sigma));
  Propagator(g, TwoStatePotential{}, 0.01).advance(gauss, 400);
  double m0 = 0, m2 = 0;
  for (int i = 0; i < g.n_xi(); ++i)
    for (int j = 0; j < g.n_eta(); ++j) {
      const double w = std::norm(gauss.g2[g.index(i, j)]);
      m0 += w;
      m2 += w * g.xi(i) * g.xi(i);
    }
  const double tau = 4.0;
  const double want = 0.5 * sigma * sigma * (1 + 4 * tau * tau / std::pow(sigma, 4));
  const double spread = std::abs(m2 / m0 - want) / want;

  o.detail << "norm drift " << drift << ", Strang ratio " << ratio << ", series diff " << series
           << ", spreading dev " << spread;
  o.require(drift < 1e-10, "norm");
  o.require(ratio >= 3.5 && ratio <= 4.5, "Strang ratio");
  o.require(series < 1e-12, "potential step");
  o.require(spread < 1e-3, "free spreading");
}

// ---- 8
void appendix_machinery(Outcome& o) {
  double sym = 0.0;
  for (const RadialPotential& pot :
       {RadialPotential::hard_disk(1.0), RadialPotential::gaussian(2.0, 0.6),
        RadialPotential::gaussian(-1.5, 0.8)}) {
    SolveOptions opts;
    opts.exact_hard_disk = false;
    const PartialWaveSolution s = solve(pot, 0.5, 1.7, opts);
    for (int n = 0; n <= 20; ++n) {
      sym = std::max(sym, std::abs(s.a_m(-n) - s.a_m(n + 1)));
      sym = std::max(sym, std::abs(s.b_m(-n) - s.b_m(n + 1)) / std::max(1.0, std::abs(s.b_m(-n))));
    }
  }
  double fold = 0.0, ray = 0.0;
  for (const PartialWaveSolution& s :
       {solve(RadialPotential::hard_disk(1.0), 0.5, 2.0),
        solve(RadialPotential::gaussian(1.0, 0.5), 0.5, 1.0)}) {
    for (int n = 0; n < 20; ++n) {
      const double r = uniform(s.r_c + 0.5, s.r_c + 15.0), th = uniform(-pi, pi);
      fold = std::max(fold, std::abs(psi_total_folded(r, th, s) - psi_total(r, th, s)));
    }
    for (double r : {s.r_c + 1.0, s.r_c + 9.0})
      ray = std::max({ray, std::abs(psi_total_folded(r, pi, s)), std::abs(psi_total_folded(r, -pi, s))});
  }
  o.detail << "symmetry " << sym << ", folded vs direct " << fold << ", |psi| on the ray " << ray;
  o.require(sym <= 1e-12, "coefficient symmetry");
  o.require(fold < 1e-10, "folded sum");
  o.require(ray < 1e-12, "nodal ray");
}

// ---- 9
void gauge_cross_validation(Outcome& o) {
  const double x0 = 3.0;
  const RealPairModel m{[x0](double x, double) { return x * (x0 - x); }, [](double, double y) { return y; },
                        [x0](double x, double) { return std::array<double, 4>{x0 - 2 * x, 0, 0, 1}; }};
  const UnitaryFunction u = [&](double x, double y) { return u_general(m.h(x, y), m.g(x, y)); };
  double worst = 0.0;
  for (int checked = 0; checked < 100;) {
    const double x = uniform(-2, 5), y = uniform(-2, 2);
    if (std::hypot(x, y) < 0.2 || std::hypot(x - x0, y) < 0.2) continue;
    const auto [ax, ay] = nonabelian_gauge(u, x, y);
    const auto a = projected_gauge(m, x, y);
    worst = std::max({worst, std::abs(ax.a22.real() - a[0]), std::abs(ay.a22.real() - a[1])});
    ++checked;
  }
  const AbelianField a = [x0](double x, double y) { return two_ci_gauge(x, y, x0); };
  const std::vector<Point2> cis{{0, 0}, {x0, 0}};
  const double curl = curvature_check(a, {-2, 5, -2, 2}, 40, cis, 0.75);
  o.detail << "closed form vs finite difference " << worst << ", curvature " << curl;
  o.require(worst < 1e-6, "projection");
  o.require(curl < 1e-6, "curvature");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-9"};
  std::vector<int> only;
  Fig6 fig6{"acceptance_out", {}};
  app.add_option("criteria", only, "run only these criteria")->check(CLI::Range(1, 9));
  app.add_option("--out", fig6.dir, "directory for the propagation bundles");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"pure flux-tube cross section is energy independent", pure_flux_tube},
      {"low-energy hard disk overlaps the flux tube", low_energy_overlap},
      {"Wilson loop theorem", wilson_theorem},
      {"topological charge", topological_charges},
      {"nonadiabatic leakage at beta=1", [&](Outcome& o) { leakage(o, fig6); }},
      {"dislocation persistence", [&](Outcome& o) { dislocation_persistence(o, fig6); }},
      {"propagator integrity", propagator_integrity},
      {"partial-wave machinery", appendix_machinery},
      {"gauge cross-validation", gauge_cross_validation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "error: " << e.what();
    }
    failed += !o.pass;
    std::printf("criterion %d: %s  %s | %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
