#include "propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ciscat {

namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

// sin(x) / x without a division at x = 0.
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double slab(double u, double half_width, double rolloff) {
  const double a = std::abs(u);
  if (a <= half_width) return 1.0;
  if (rolloff <= 0.0 || a >= half_width + rolloff) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (a - half_width) / rolloff));
}

// Edge mask factor along one axis for the coordinate at fractional position
// f in [0, 1] of the box.
double edge_profile(double f, double margin) {
  if (margin <= 0.0) return 0.0;
  double d = 0.0;
  if (f < margin) d = (margin - f) / margin;
  else if (f > 1.0 - margin) d = (f - (1.0 - margin)) / margin;
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace

double PropagationConfig::wavenumber() const {
  if (carrier_k > 0.0) return carrier_k;
  return std::sqrt(beta * model.params().delta);
}

void validate(const PropagationConfig& config) {
  std::ostringstream err;
  if (!(config.dtau > 0.0)) err << "dtau must be > 0; ";
  if (!(config.beta > 0.0)) err << "beta must be > 0; ";
  if (config.n_steps < 0) err << "n_steps must be >= 0; ";
  if (config.snapshot_every < 0) err << "snapshot_every must be >= 0; ";
  if (config.packet.direction != 1 && config.packet.direction != -1)
    err << "packet direction must be +1 or -1; ";
  if (!(config.packet.sigma_long > 0.0)) err << "sigma_long must be > 0; ";
  if (!(config.packet.half_width >= 0.0) || !(config.packet.rolloff >= 0.0))
    err << "slab half_width and rolloff must be >= 0; ";
  if (config.absorber.kind == AbsorberSpec::Kind::Mask &&
      !(config.absorber.margin > 0.0 && config.absorber.margin < 0.5))
    err << "absorber margin must lie in (0, 0.5); ";
  const double k = config.wavenumber();
  const double h = std::max(config.grid.h_xi(), config.grid.h_eta());
  if (!(k < kPi / (2.0 * h)))
    err << "carrier wavenumber " << k << " exceeds half Nyquist " << kPi / (2.0 * h) << "; ";
  const std::string msg = err.str();
  if (!msg.empty()) fail(ErrorKind::Config, msg.substr(0, msg.size() - 2));
}

double backscatter_fraction(const SpinorField& field, double line_xi, int direction) {
  validate(field);
  const Grid2D& g = field.grid;
  double upstream = 0.0, total = 0.0;
  for (int i = 0; i < g.n_xi(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n_eta(); ++j) {
      const std::size_t n = g.index(i, j);
      row += std::norm(field.g1[n]) + std::norm(field.g2[n]);
    }
    total += row;
    const double xi = g.xi(i);
    if ((direction > 0 && xi < line_xi) || (direction < 0 && xi > line_xi)) upstream += row;
  }
  return total > 0.0 ? upstream / total : 0.0;
}

Mat2 potential_propagator(double h, cplx c, double dtau) {
  const double e = std::hypot(h, std::abs(c));
  const double cs = std::cos(e * dtau);
  const cplx f = -1i * dtau * sinc(e * dtau);
  return {cs + f * h, f * c, f * std::conj(c), cs - f * h};
}

Propagator::Propagator(const Grid2D& grid, const TwoStatePotential& model, double dtau,
                       const AbsorberSpec& absorber)
    : grid_(grid), dtau_(dtau), absorbing_(absorber.kind == AbsorberSpec::Kind::Mask),
      fft_(grid), kinetic_half_(grid.size()), kinetic_full_(grid.size()),
      potential_(grid.size()) {
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (int j = 0; j < grid.n_eta(); ++j) {
    const double ky = grid.k_eta(j);
    for (int i = 0; i < grid.n_xi(); ++i) {
      const double kx = grid.k_xi(i);
      const double k2 = kx * kx + ky * ky;
      const std::size_t n = static_cast<std::size_t>(j) * grid.n_xi() + i;
      kinetic_half_[n] = std::exp(-0.5i * dtau * k2) * inv_n;
      kinetic_full_[n] = std::exp(-1i * dtau * k2) * inv_n;
    }
  }
  for (int i = 0; i < grid.n_xi(); ++i)
    for (int j = 0; j < grid.n_eta(); ++j) {
      const double x = grid.xi(i), y = grid.eta(j);
      Mat2 u = potential_propagator(model.h(x, y), model.c(x, y), dtau);
      const double v = model.scalar(x, y);
      if (v != 0.0) u *= std::exp(-1i * dtau * v);
      potential_[grid.index(i, j)] = u;
    }
  if (absorbing_) {
    mask_.assign(grid.size(), 1.0);
    const double exponent = 0.5 * absorber.strength * dtau;
    for (int i = 0; i < grid.n_xi(); ++i) {
      const double dx = edge_profile((i + 0.5) / grid.n_xi(), absorber.margin);
      for (int j = 0; j < grid.n_eta(); ++j) {
        const double dy = edge_profile((j + 0.5) / grid.n_eta(), absorber.margin);
        const double mx = std::pow(0.5 * (1.0 + std::cos(kPi * dx)), exponent);
        const double my = std::pow(0.5 * (1.0 + std::cos(kPi * dy)), exponent);
        mask_[grid.index(i, j)] = mx * my;
      }
    }
  }
}

void Propagator::kinetic(SpinorField& field, const ComplexArray& factor) const {
  for (ComplexArray* comp : {&field.g1, &field.g2}) {
    fft_.forward_transposed(*comp);
    cplx* d = comp->data();
    const cplx* k = factor.data();
    const std::size_t n = comp->size();
    for (std::size_t m = 0; m < n; ++m) d[m] *= k[m];
    fft_.inverse_transposed(*comp);
  }
}

void Propagator::kinetic_half(SpinorField& field) const { kinetic(field, kinetic_half_); }

void Propagator::potential(SpinorField& field) const {
  cplx* a = field.g1.data();
  cplx* b = field.g2.data();
  const Mat2* u = potential_.data();
  const std::size_t n = field.g1.size();
  for (std::size_t m = 0; m < n; ++m) {
    const cplx x = a[m], y = b[m];
    a[m] = u[m].a11 * x + u[m].a12 * y;
    b[m] = u[m].a21 * x + u[m].a22 * y;
  }
}

double Propagator::absorb(SpinorField& field) const {
  if (!absorbing_) return 0.0;
  double removed = 0.0;
  const std::size_t n = field.g1.size();
  for (std::size_t m = 0; m < n; ++m) {
    const double w = mask_[m];
    if (w == 1.0) continue;
    const double before = std::norm(field.g1[m]) + std::norm(field.g2[m]);
    field.g1[m] *= w;
    field.g2[m] *= w;
    removed += before * (1.0 - w * w);
  }
  return removed * grid_.cell_area();
}

double Propagator::potential_and_absorb(SpinorField& field) const {
  potential(field);
  return absorb(field);
}

double Propagator::step(SpinorField& field) const { return advance(field, 1); }

double Propagator::advance(SpinorField& field, int n) const {
  if (n <= 0) return 0.0;
  double removed = 0.0;
  kinetic(field, kinetic_half_);
  for (int s = 0; s < n; ++s) {
    removed += potential_and_absorb(field);
    kinetic(field, s + 1 < n ? kinetic_full_ : kinetic_half_);
    field.tau += dtau_;
  }
  return removed;
}

SpinorField potential_step(const SpinorField& field, const TwoStatePotential& model,
                           double dtau) {
  validate(field);
  SpinorField out = field;
  const Grid2D& g = field.grid;
  for (int i = 0; i < g.n_xi(); ++i)
    for (int j = 0; j < g.n_eta(); ++j) {
      const double x = g.xi(i), y = g.eta(j);
      Mat2 u = potential_propagator(model.h(x, y), model.c(x, y), dtau);
      const double v = model.scalar(x, y);
      if (v != 0.0) u *= std::exp(-1i * dtau * v);
      const std::size_t n = g.index(i, j);
      out.set(n, u * field.at(n));
    }
  return out;
}

SpinorField kinetic_half_step(const SpinorField& field, double dtau) {
  validate(field);
  Propagator p(field.grid, TwoStatePotential{}, dtau);
  SpinorField out = field;
  p.kinetic_half(out);
  return out;
}

SpinorField step(const SpinorField& field, const TwoStatePotential& model, double dtau) {
  validate(field);
  Propagator p(field.grid, model, dtau);
  SpinorField out = field;
  const double before = norm(out);
  p.step(out);
  const double drift = std::abs(norm(out) - before);
  if (drift > 1e-6)
    fail(ErrorKind::Numerical, "norm drift " + std::to_string(drift) + " in one step");
  return out;
}

ScalarField packet_profile(const PropagationConfig& config) {
  const Grid2D& g = config.grid;
  const PacketSpec& p = config.packet;
  const double k = config.wavenumber() * p.direction;
  ScalarField psi(g);
  double total = 0.0;
  for (int i = 0; i < g.n_xi(); ++i) {
    const double xi = g.xi(i);
    const double dl = xi - p.xi0;
    const double env = std::exp(-dl * dl / (2.0 * p.sigma_long * p.sigma_long));
    const cplx carrier = std::exp(1i * k * xi);
    for (int j = 0; j < g.n_eta(); ++j) {
      const cplx v = env * slab(g.eta(j) - p.eta0, p.half_width, p.rolloff) * carrier;
      psi(i, j) = v;
      total += std::norm(v);
    }
  }
  if (!(total > 0.0)) fail(ErrorKind::Config, "packet has no support on the grid");
  const double scale = 1.0 / std::sqrt(total * g.cell_area());
  for (cplx& v : psi.values) v *= scale;
  return psi;
}

SpinorField prepare_packet(const PropagationConfig& config) {
  validate(config);
  const ScalarField psi = packet_profile(config);
  const Grid2D& g = config.grid;
  const TwoStatePotential& model = config.model;

  // Asymptotic-region precondition: the packet must start on the flat part of
  // the ground surface.
  const bool has_core = model.kind() == ModelKind::CappedJT ||
                        model.kind() == ModelKind::TwistedCappedJT ||
                        model.kind() == ModelKind::TwoCI;
  if (has_core) {
    const double core = model.kind() == ModelKind::TwoCI
                            ? std::max({model.params().rho0, std::abs(model.params().x0)})
                            : model.params().rho0;
    double inside = 0.0;
    for (int i = 0; i < g.n_xi(); ++i)
      for (int j = 0; j < g.n_eta(); ++j) {
        const double r = model.kind() == ModelKind::TwoCI
                             ? std::min(std::hypot(g.xi(i), g.eta(j)),
                                        std::hypot(g.xi(i) - model.params().x0, g.eta(j)))
                             : std::hypot(g.xi(i), g.eta(j));
        if (r <= core) inside += std::norm(psi(i, j));
      }
    inside *= g.cell_area();
    if (inside >= 1e-8) {
      std::ostringstream msg;
      msg << "packet carries " << inside << " probability inside the interaction core "
          << "(radius " << core << "); move it into the asymptotic region";
      fail(ErrorKind::Config, msg.str());
    }
  }

  SpinorField out(g, 0.0);
  for (int i = 0; i < g.n_xi(); ++i)
    for (int j = 0; j < g.n_eta(); ++j) {
      const std::size_t n = g.index(i, j);
      const Mat2 u = model.frame(g.xi(i), g.eta(j));
      out.set(n, u * Vec2{0.0, psi.values[n]});
    }
  return out;
}

double mean_wavenumber_xi(const SpinorField& field) {
  validate(field);
  SpectralTransform fft(field.grid);
  SpinorField spec = field;
  fft.forward(spec.g1);
  fft.forward(spec.g2);
  double num = 0.0, den = 0.0;
  const Grid2D& g = field.grid;
  for (int i = 0; i < g.n_xi(); ++i) {
    const double kx = g.k_xi(i);
    for (int j = 0; j < g.n_eta(); ++j) {
      const std::size_t n = g.index(i, j);
      const double w = std::norm(spec.g1[n]) + std::norm(spec.g2[n]);
      num += kx * w;
      den += w;
    }
  }
  return num / den;
}

double energy(const SpinorField& field, const TwoStatePotential& model) {
  validate(field);
  const Grid2D& g = field.grid;
  SpectralTransform fft(g);
  SpinorField spec = field;
  fft.forward(spec.g1);
  fft.forward(spec.g2);
  double kinetic = 0.0, potential = 0.0, weight = 0.0;
  for (int i = 0; i < g.n_xi(); ++i)
    for (int j = 0; j < g.n_eta(); ++j) {
      const std::size_t n = g.index(i, j);
      const double k2 = g.k_xi(i) * g.k_xi(i) + g.k_eta(j) * g.k_eta(j);
      kinetic += k2 * (std::norm(spec.g1[n]) + std::norm(spec.g2[n]));
      const double x = g.xi(i), y = g.eta(j);
      const Vec2 v = field.at(n);
      const Vec2 hv = model.matrix(x, y) * v;
      const double s = model.scalar(x, y);
      potential += (std::conj(v.c1) * hv.c1 + std::conj(v.c2) * hv.c2).real() +
                   s * (std::norm(v.c1) + std::norm(v.c2));
      weight += std::norm(v.c1) + std::norm(v.c2);
    }
  // Unitary transform: spectral and nodal weights agree.
  return (kinetic + potential) / weight;
}

std::vector<DiagnosticRecord> run_streaming(const PropagationConfig& config,
                                            const SnapshotObserver& observer) {
  SpinorField field = prepare_packet(config);
  const Grid2D& g = config.grid;
  const Propagator prop(g, config.model, config.dtau, config.absorber);
  const UnitaryField frames = frame_field(config.model, g);
  const int dir = config.packet.direction;
  const double line = 0.5 * config.packet.xi0;

  const double half_length = 0.5 * (g.xi_max() - g.xi_min());
  const double centre = 0.5 * (g.xi_max() + g.xi_min());
  const double marker = centre + dir * config.marker_fraction * half_length;
  double max_tau = config.max_tau;
  if (max_tau <= 0.0) {
    const double speed = 2.0 * config.wavenumber();
    max_tau = 3.0 * std::abs(marker - config.packet.xi0) / speed;
  }

  double absorbed = 0.0;
  std::vector<DiagnosticRecord> records;
  int snapshot_index = 0;
  auto record = [&](int step_index) {
    DiagnosticRecord r;
    r.step = step_index;
    r.tau = field.tau;
    r.norm = norm(field);
    const auto [excited, ground] = populations_in_frame(field, frames);
    r.p_ground = ground;
    r.p_excited = excited;
    r.absorbed = absorbed;
    r.backscatter = backscatter_fraction(field, line, dir);
    records.push_back(r);
    if (observer) observer(snapshot_index, field);
    ++snapshot_index;
  };

  // Transmitted-peak position: argmax over the downstream half of the
  // eta-integrated density, ignoring bins below 1e-3 of the global maximum.
  std::vector<double> marginal(g.n_xi());
  auto passed_marker = [&]() {
    double global = 0.0;
    for (int i = 0; i < g.n_xi(); ++i) {
      double s = 0.0;
      for (int j = 0; j < g.n_eta(); ++j) {
        const std::size_t n = g.index(i, j);
        s += std::norm(field.g1[n]) + std::norm(field.g2[n]);
      }
      marginal[i] = s;
      global = std::max(global, s);
    }
    int best = -1;
    for (int i = 0; i < g.n_xi(); ++i) {
      const double rel = (g.xi(i) - centre) * dir;
      if (rel <= 0.0 || marginal[i] < 1e-3 * global) continue;
      if (best < 0 || marginal[i] > marginal[best]) best = i;
    }
    return best >= 0 && (g.xi(best) - marker) * dir >= 0.0;
  };

  record(0);
  double previous = norm(field);
  const bool fixed = config.n_steps > 0;
  const int check_every = std::max(1, static_cast<int>(std::lround(0.05 / config.dtau)));
  int s = 0;
  while (true) {
    if (fixed && s >= config.n_steps) break;
    if (!fixed && field.tau >= max_tau - 0.5 * config.dtau) break;
    // Advance to the next point where the field is needed in position space.
    int chunk = fixed ? config.n_steps - s : check_every - s % check_every;
    if (config.snapshot_every > 0)
      chunk = std::min(chunk, config.snapshot_every - s % config.snapshot_every);
    if (!fixed) {
      const int left = static_cast<int>(std::ceil((max_tau - field.tau) / config.dtau - 0.5));
      chunk = std::max(1, std::min(chunk, left));
    }
    const double removed = prop.advance(field, chunk);
    s += chunk;
    absorbed += removed;
    const double now = norm(field);
    const double drift = now + removed - previous;
    if (!std::isfinite(now) || std::abs(drift) > 1e-6 * chunk) {
      std::ostringstream msg;
      msg << "norm drift " << drift << " over steps " << s - chunk + 1 << ".." << s
          << " (tau = " << field.tau << ")";
      fail(ErrorKind::Numerical, msg.str());
    }
    previous = now;
    if (!fixed && s % check_every == 0 && passed_marker()) break;
    if (config.snapshot_every > 0 && s % config.snapshot_every == 0) record(s);
  }
  if (records.back().step != s) record(s);
  return records;
}

Trajectory run(const PropagationConfig& config) {
  Trajectory t;
  t.diagnostics = run_streaming(config, [&](int, const SpinorField& f) {
    t.snapshots.push_back(f);
  });
  return t;
}

}  // namespace ciscat
