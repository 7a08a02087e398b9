#include "partialwave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "special.hpp"

namespace ciscat {

namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::Domain, "wavenumber k must be > 0");
}

bool is_integer(double v) { return v == std::floor(v); }

// (-i)^nu for real nu >= 0.
cplx minus_i_pow(double nu) { return std::exp(-0.5i * kPi * nu); }

double order(double alpha, int m) { return std::abs(m - alpha); }

}  // namespace

RadialPotential RadialPotential::none() { return {}; }

RadialPotential RadialPotential::hard_disk(double a) {
  if (!(a > 0.0)) fail(ErrorKind::Domain, "hard disk radius must be > 0");
  RadialPotential p;
  p.kind = Kind::HardDisk;
  p.radius = a;
  p.range = a;
  std::ostringstream s;
  s << "hard_disk(" << a << ")";
  p.label = s.str();
  return p;
}

RadialPotential RadialPotential::gaussian(double height, double width) {
  if (!(width > 0.0)) fail(ErrorKind::Domain, "gaussian width must be > 0");
  std::ostringstream s;
  s << "gaussian(" << height << "," << width << ")";
  return smooth([height, width](double r) {
    const double q = r / width;
    return height * std::exp(-q * q);
  }, 6.0 * width, s.str());
}

RadialPotential RadialPotential::smooth(std::function<double(double)> u, double range,
                                        std::string label) {
  if (!(range > 0.0)) fail(ErrorKind::Domain, "potential range must be > 0");
  RadialPotential p;
  p.kind = Kind::Smooth;
  p.range = range;
  p.u = std::move(u);
  p.label = std::move(label);
  return p;
}

double RadialPotential::default_matching_radius(double k) const {
  switch (kind) {
    case Kind::HardDisk: return radius + 10.0 / k;
    case Kind::Smooth: return 5.0 * range;
    default: return 10.0 / k;
  }
}

cplx psi_incident(double rho, double phi, double k) {
  return std::exp(-1i * k * rho * std::cos(phi)) * std::exp(0.5i * phi);
}

cplx psi_ab(double rho, double phi, double k) {
  require_k(k);
  if (rho < 0.0) fail(ErrorKind::Domain, "psi_ab: rho must be >= 0");
  if (std::abs(phi) > kPi) fail(ErrorKind::Domain, "psi_ab: |phi| must be <= pi");
  const cplx z = std::exp(0.75i * kPi) * std::sqrt(2.0 * k * rho) * std::cos(0.5 * phi);
  return -std::exp(0.5i * phi) * std::exp(-1i * k * rho * std::cos(phi)) * erf(z);
}

double xs_pure_ab(double alpha, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(kPi * alpha);
  if (std::abs(c) < 1e-300 || std::abs(std::remainder(theta - kPi, 2.0 * kPi)) == 0.0) {
    if (is_integer(alpha)) return 0.0;
    fail(ErrorKind::Divergence,
         "pure flux-tube cross section diverges in the forward direction theta = pi");
  }
  if (is_integer(alpha)) return 0.0;
  return s * s / (c * c);
}

namespace {

// One Numerov pass on u = sqrt(r) R, returning the angle of (R'/k, R).
double numerov_angle(const RadialPotential& pot, double nu, double k, double r0, double r_c,
                     int n, bool hard) {
  const double h = (r_c - r0) / n;
  const double cent = nu * nu - 0.25;
  auto q = [&](double r) { return k * k - pot(r) - cent / (r * r); };
  auto f = [&](double r) { return 1.0 + h * h * q(r) / 12.0; };

  // Renormalized recurrence on rho_i = w_{i+1} / w_i, w = (1 + h^2 Q / 12) u,
  // carried as delta = rho - 1 so the O(h) information is not lost to
  // cancellation against 1.
  int i0;
  double delta;
  if (hard) {
    // u(a) = 0: w_0 = 0, so rho_1 = U_1.
    i0 = 1;
    delta = std::numeric_limits<double>::infinity();
  } else {
    // Regular series u = r^{nu+1/2} (1 + c r^2) at nodes 1 and 2.
    const double c = -(k * k - pot(0.0)) / (4.0 * (nu + 1.0));
    auto series = [&](double r) { return 1.0 + c * r * r; };
    const double r1 = r0 + h, r2 = r0 + 2.0 * h;
    const double ratio = std::pow(r2 / r1, nu + 0.5) * series(r2) / series(r1);
    delta = ratio * f(r2) / f(r1) - 1.0;
    i0 = 2;
  }
  double delta_prev = delta;
  for (int i = i0; i <= n; ++i) {
    const double t = -h * h * q(r0 + i * h) / 12.0;
    const double excess = 12.0 * t / (1.0 - t);  // U_i - 2
    delta_prev = delta;
    // rho_i = U_i - 1 / rho_{i-1}  =>  delta_i = excess + delta_{i-1} / (1 + delta_{i-1})
    delta = std::isinf(delta) ? 1.0 + excess : excess + delta / (1.0 + delta);
    if (!std::isfinite(delta)) fail(ErrorKind::Numerical, "Numerov ratio overflow");
  }
  // delta: w_{n+1}/w_n - 1, delta_prev: w_n/w_{n-1} - 1.
  const double rn = r_c, rp = r_c + h, rm = r_c - h;
  const double fn = f(rn), fp = f(rp), fm = f(rm);
  const double up = (1.0 + delta) * fn / fp;  // u_{n+1}/u_n
  const double um = std::isinf(delta_prev) ? 0.0 : fn / ((1.0 + delta_prev) * fm);
  const double du = (up * (1.0 + h * h * q(rp) / 6.0) - um * (1.0 + h * h * q(rm) / 6.0)) /
                    (2.0 * h);
  // R = u / sqrt(r): R'/R = u'/u - 1/(2r).
  const double dlog = du - 0.5 / rn;
  return std::atan2(1.0, dlog / k);
}

}  // namespace

LogDerivative radial_logderiv(const RadialPotential& pot, double nu, double k, double r_c,
                              int n_steps) {
  require_k(k);
  if (!(nu >= 0.0)) fail(ErrorKind::Domain, "radial_logderiv: nu must be >= 0");
  const bool hard = pot.kind == RadialPotential::Kind::HardDisk;
  const double r0 = hard ? pot.radius : 0.0;
  if (!(r_c > r0)) fail(ErrorKind::Domain, "matching radius must lie outside the disk");
  if (pot.kind == RadialPotential::Kind::Smooth && r_c < pot.range)
    fail(ErrorKind::Domain, "matching radius must lie beyond the potential range");
  if (n_steps < 16) fail(ErrorKind::Domain, "radial_logderiv: n_steps must be >= 16");

  const double a1 = numerov_angle(pot, nu, k, r0, r_c, n_steps, hard);
  const double a2 = numerov_angle(pot, nu, k, r0, r_c, 2 * n_steps, hard);
  // Angles live modulo pi; bring a1 next to a2 before extrapolating.
  const double d = std::remainder(a1 - a2, kPi);
  const double angle = a2 - d / 15.0;
  if (!std::isfinite(angle)) fail(ErrorKind::Numerical, "radial integration failed");
  return {k * std::cos(angle), std::sin(angle)};
}

cplx a_coefficient(double alpha, int m) { return minus_i_pow(order(alpha, m)); }

cplx b_coefficient(const LogDerivative& y, double k, double r_c, double alpha, int m) {
  const double nu = order(alpha, m);
  const CylinderValues c = cylinder(nu, k * r_c);
  if (!std::isfinite(c.y) || !std::isfinite(c.yp)) return 0.0;
  // b (R k H' - R' H) = a (R' J - R k J')
  const cplx num = y.dr * c.j - y.r * k * c.jp;
  const cplx den = y.r * k * c.h1p() - y.dr * c.h1();
  if (std::abs(den) < 1e-300) {
    std::ostringstream msg;
    msg << "ill-conditioned matching for m = " << m << " (|denominator| = " << std::abs(den)
        << ")";
    fail(ErrorKind::IllConditioned, msg.str());
  }
  return a_coefficient(alpha, m) * num / den;
}

cplx b_hard_disk(double k, double a, double alpha, int m) {
  require_k(k);
  const double nu = order(alpha, m);
  const CylinderValues c = cylinder(nu, k * a);
  if (!std::isfinite(c.y)) return 0.0;
  const cplx h = c.h1();
  if (std::abs(h) < 1e-300) fail(ErrorKind::IllConditioned, "hard-disk Hankel value vanished");
  return -a_coefficient(alpha, m) * c.j / h;
}

std::pair<cplx, cplx> coefficients(const LogDerivative& y, double k, double r_c, double alpha,
                                   int m) {
  return {a_coefficient(alpha, m), b_coefficient(y, k, r_c, alpha, m)};
}

cplx PartialWaveSolution::a_m(int m) const {
  return in_table(m) ? a[slot(m)] : a_coefficient(alpha, m);
}

cplx PartialWaveSolution::b_m(int m) const { return in_table(m) ? b[slot(m)] : 0.0; }

PartialWaveSolution solve(const RadialPotential& pot, double alpha, double k,
                          const SolveOptions& options) {
  require_k(k);
  if (!std::isfinite(alpha)) fail(ErrorKind::Domain, "alpha must be finite");
  if (options.m_max < 1) fail(ErrorKind::Domain, "m_max must be >= 1");
  PartialWaveSolution sol;
  sol.alpha = alpha;
  sol.k = k;
  sol.kind = pot.kind;
  sol.hard_disk_radius = pot.kind == RadialPotential::Kind::HardDisk ? pot.radius : 0.0;
  sol.r_c = options.r_c > 0.0 ? options.r_c : pot.default_matching_radius(k);

  // Orders |m - alpha| repeat for alpha = 1/2; share one log-derivative per
  // order so the m <-> 1 - m symmetry is exact.
  std::map<double, LogDerivative> cache;
  auto entry = [&](int m) -> std::pair<cplx, double> {
    switch (pot.kind) {
      case RadialPotential::Kind::None:
        return {0.0, 0.0};
      case RadialPotential::Kind::HardDisk:
        if (options.exact_hard_disk) {
          return {b_hard_disk(k, pot.radius, alpha, m),
                  std::numeric_limits<double>::quiet_NaN()};
        }
        [[fallthrough]];
      default: {
        const double nu = order(alpha, m);
        auto it = cache.find(nu);
        if (it == cache.end())
          it = cache.emplace(nu, radial_logderiv(pot, nu, k, sol.r_c, options.n_steps)).first;
        const LogDerivative& y = it->second;
        const double yv = y.r == 0.0 ? std::numeric_limits<double>::infinity() : y.value();
        return {b_coefficient(y, k, sol.r_c, alpha, m), yv};
      }
    }
  };

  int m_max = options.m_max;
  std::map<int, std::pair<cplx, double>> computed;
  while (true) {
    for (int m = -m_max; m <= m_max + 1; ++m)
      if (!computed.count(m)) computed[m] = entry(m);
    double peak = 0.0;
    for (const auto& [m, v] : computed)
      if (m >= -m_max && m <= m_max + 1) peak = std::max(peak, std::abs(v.first));
    const double tail =
        std::max(std::abs(computed[-m_max].first), std::abs(computed[m_max + 1].first));
    if (peak == 0.0 || tail < 1e-12 * peak) break;
    if (m_max >= options.m_cap) {
      std::ostringstream msg;
      msg << "partial-wave sum not converged at m_max = " << m_max << " (tail " << tail / peak
          << " of peak)";
      fail(ErrorKind::Truncation, msg.str());
    }
    m_max = std::min(2 * m_max, options.m_cap);
  }
  sol.m_max = m_max;
  const std::size_t n = static_cast<std::size_t>(2 * m_max + 2);
  sol.a.resize(n);
  sol.b.resize(n);
  sol.y.resize(n);
  for (int m = -m_max; m <= m_max + 1; ++m) {
    sol.a[sol.slot(m)] = a_coefficient(alpha, m);
    sol.b[sol.slot(m)] = computed[m].first;
    sol.y[sol.slot(m)] = computed[m].second;
  }
  return sol;
}

namespace {

void require_outside(double r, const PartialWaveSolution& sol) {
  const double inner = sol.kind == RadialPotential::Kind::HardDisk ? sol.hard_disk_radius : 0.0;
  const double limit = sol.kind == RadialPotential::Kind::Smooth ? sol.r_c : inner;
  if (!(r > limit) && !(sol.kind == RadialPotential::Kind::None && r >= 0.0)) {
    std::ostringstream msg;
    msg << "r = " << r << " lies inside the matching region (r_c = " << limit << ")";
    fail(ErrorKind::Domain, msg.str());
  }
}

// Highest |m| needed for the regular series to converge at argument x.
int regular_cutoff(double x) {
  return static_cast<int>(std::ceil(x + 12.0 * std::cbrt(x + 1.0) + 30.0));
}

void check_tail(double tail, double scale) {
  if (tail > 1e-12 * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "partial-wave evaluation truncated: tail term " << tail;
    fail(ErrorKind::Truncation, msg.str());
  }
}

}  // namespace

cplx psi_total(double r, double theta, const PartialWaveSolution& sol) {
  require_outside(r, sol);
  if (r == 0.0) {
    // Only the nu = 0 regular wave survives at the origin.
    return is_integer(sol.alpha) ? sol.a_m(static_cast<int>(sol.alpha)) : 0.0;
  }
  const double x = sol.k * r;
  const int m_hi = std::max(sol.m_max + 1, regular_cutoff(x) + static_cast<int>(std::abs(sol.alpha)));
  const int m_lo = std::min(-sol.m_max, -regular_cutoff(x) - static_cast<int>(std::abs(sol.alpha)));
  cplx sum = 0.0;
  double tail = 0.0;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double nu = order(sol.alpha, m);
    const CylinderValues c = cylinder(nu, x);
    cplx term = sol.a_m(m) * c.j;
    const cplx b = sol.b_m(m);
    if (b != 0.0 && std::isfinite(c.y)) term += b * c.h1();
    sum += term * std::exp(1i * (m * theta));
    if (m == m_lo || m == m_hi) tail = std::max(tail, std::abs(term));
  }
  check_tail(tail, std::abs(sum));
  return sum;
}

cplx psi_total_folded(double r, double theta, const PartialWaveSolution& sol) {
  if (sol.alpha != 0.5) fail(ErrorKind::Domain, "folded form needs alpha = 1/2");
  require_outside(r, sol);
  if (r == 0.0) return 0.0;
  const double x = sol.k * r;
  const int n_hi = std::max(sol.m_max + 1, regular_cutoff(x) + 1);
  cplx sum = 0.0;
  double tail = 0.0;
  for (int n = 1; n <= n_hi; ++n) {
    const CylinderValues c = cylinder(n - 0.5, x);
    cplx radial = sol.a_m(n) * c.j;
    const cplx b = sol.b_m(n);
    if (b != 0.0 && std::isfinite(c.y)) radial += b * c.h1();
    // e^{i n theta} + e^{i (1 - n) theta}
    const cplx fold = 1.0 + std::exp(-1i * ((2.0 * n - 1.0) * theta));
    sum += std::exp(1i * (n * theta)) * fold * radial;
    if (n == n_hi) tail = std::abs(radial);
  }
  check_tail(tail, std::abs(sum));
  return sum;
}

cplx psi_scattered_fast(double r, double theta, const PartialWaveSolution& sol) {
  if (sol.alpha != 0.5) fail(ErrorKind::Domain, "fast Hankel sum needs alpha = 1/2");
  require_outside(r, sol);
  const double x = sol.k * r;
  // H_{-1/2} = sqrt(2/(pi x)) e^{ix}, H_{1/2} = -i sqrt(2/(pi x)) e^{ix}.
  const cplx base = std::sqrt(2.0 / (kPi * x)) * std::exp(1i * x);
  cplx hm = base, h = -1i * base;
  cplx sum = 0.0;
  for (int n = 1; n <= sol.m_max + 1; ++n) {
    // order n - 1/2 pairs m = n with m = 1 - n
    const cplx bn = sol.b_m(n);
    const cplx bp = sol.b_m(1 - n);
    sum += h * (bn * std::exp(1i * (n * theta)) + bp * std::exp(1i * ((1 - n) * theta)));
    const double nu = n - 0.5;
    const cplx next = (2.0 * nu / x) * h - hm;
    hm = h;
    h = next;
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) break;
  }
  return sum;
}

cplx psi_total_fast(double r, double theta, const PartialWaveSolution& sol) {
  return psi_ab(r, theta, sol.k) + psi_scattered_fast(r, theta, sol);
}

cplx psi_hard_disk(double r, double theta, double k, double a) {
  require_k(k);
  if (!(r >= a)) fail(ErrorKind::Domain, "psi_hard_disk: r must be >= a");
  cplx psi_a = 0.0;
  const int m_hi = regular_cutoff(k * a) + 10;
  for (int m = -m_hi; m <= m_hi + 1; ++m) {
    const double nu = order(0.5, m);
    const CylinderValues ca = cylinder(nu, k * a);
    if (!std::isfinite(ca.y)) continue;
    const CylinderValues cr = cylinder(nu, k * r);
    if (!std::isfinite(cr.y)) continue;
    psi_a += minus_i_pow(nu) * std::exp(1i * (m * theta)) * (ca.j / ca.h1()) * cr.h1();
  }
  return psi_ab(r, theta, k) - psi_a;
}

cplx ab_amplitude(double alpha, double k, double theta) {
  require_k(k);
  if (is_integer(alpha)) return 0.0;
  const double n = std::floor(alpha);
  const double frac = alpha - n;
  const double c = std::cos(0.5 * theta);
  if (std::abs(c) < 1e-15)
    fail(ErrorKind::Divergence, "flux-tube amplitude diverges at theta = pi");
  const cplx s = std::exp(1i * (n * theta)) * (-1i * std::sin(kPi * frac)) *
                 std::exp(0.5i * theta) / c;
  return std::sqrt(1.0 / (2.0 * kPi * k)) * std::exp(-0.25i * kPi) * s;
}

cplx ab_amplitude_abel(double alpha, double k, double theta) {
  require_k(k);
  auto damped = [&](double eps) {
    const int m_hi = static_cast<int>(std::ceil(40.0 / eps)) + static_cast<int>(std::abs(alpha));
    cplx sum = 0.0;
    for (int m = -m_hi; m <= m_hi; ++m) {
      const cplx d = std::exp(-1i * kPi * order(alpha, m)) - std::exp(-1i * kPi * double(m));
      sum += d * std::exp(1i * (m * theta)) * std::exp(-eps * std::abs(m));
    }
    return sum;
  };
  // Error series in eps: eliminate the first two orders.
  const double e = 2e-3;
  const cplx s1 = damped(e), s2 = damped(0.5 * e), s4 = damped(0.25 * e);
  const cplx r1 = 2.0 * s2 - s1, r2 = 2.0 * s4 - s2;
  const cplx s = (4.0 * r2 - r1) / 3.0;
  return std::sqrt(1.0 / (2.0 * kPi * k)) * std::exp(-0.25i * kPi) * s;
}

cplx scattering_amplitude(const PartialWaveSolution& sol, double theta) {
  cplx f = ab_amplitude(sol.alpha, sol.k, theta);
  cplx sum = 0.0;
  for (int m = sol.m_min(); m <= sol.m_max + 1; ++m) {
    const cplx b = sol.b_m(m);
    if (b == 0.0) continue;
    sum += b * std::exp(-0.5i * kPi * order(sol.alpha, m)) * std::exp(1i * (m * theta));
  }
  return f + std::sqrt(2.0 / (kPi * sol.k)) * std::exp(-0.25i * kPi) * sum;
}

std::vector<double> differential_cross_section(const PartialWaveSolution& sol,
                                               std::span<const double> thetas) {
  std::vector<double> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(sol.k * std::norm(scattering_amplitude(sol, t)));
  return out;
}

}  // namespace ciscat
