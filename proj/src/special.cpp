#include "special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ciscat {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;

bool is_halfint(double nu) {
  const double n = nu - 0.5;
  return n >= 0.0 && n == std::floor(n) && n < 1e6;
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << who << ": argument must be finite and > 0, got " << x;
    fail(ErrorKind::Domain, msg.str());
  }
}

// j_{n+1}(x) / j_n(x) by modified Lentz on
// 1 / (b_1 - 1 / (b_2 - ...)), b_i = (2n + 2i + 1) / x.
double spherical_ratio(int n, double x) {
  double f = kTiny, c = f, d = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double b = (2.0 * n + 2.0 * i + 1.0) / x;
    const double a = i == 1 ? 1.0 : -1.0;
    d = b + a * d;
    if (d == 0.0) d = kTiny;
    c = b + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  fail(ErrorKind::Numerical, "spherical Bessel continued fraction did not converge");
}

}  // namespace

SphericalValues spherical_bessel(int n, double x) {
  if (n < 0) fail(ErrorKind::Domain, "spherical_bessel: order must be >= 0");
  require_positive(x, "spherical_bessel");
  const double s = std::sin(x), c = std::cos(x);
  // y_{-1} = sin(x)/x, y_0 = -cos(x)/x.
  double ym = s / x;
  double y = -c / x;
  for (int l = 0; l < n; ++l) {
    const double next = (2.0 * l + 1.0) / x * y - ym;
    ym = y;
    y = next;
    if (!std::isfinite(y)) break;
  }
  SphericalValues v{};
  v.y = y;
  v.yp = ym - (n + 1.0) / x * y;  // y_n' = y_{n-1} - (n+1)/x y_n
  if (!std::isfinite(v.y) || !std::isfinite(v.yp)) {
    // j_n underflows relative to y_n here; report j = 0.
    v.y = -std::numeric_limits<double>::infinity();
    v.yp = std::numeric_limits<double>::infinity();
    v.j = 0.0;
    v.jp = 0.0;
    return v;
  }
  const double logd = n / x - spherical_ratio(n, x);  // j_n' / j_n
  // Wronskian j_n y_n' - j_n' y_n = 1 / x^2.
  v.j = 1.0 / (x * x * (v.yp - logd * v.y));
  v.jp = logd * v.j;
  return v;
}

CylinderValues bessel_halfint(double nu, double x) {
  if (!is_halfint(nu)) {
    std::ostringstream msg;
    msg << "bessel_halfint: order " << nu << " is not a half-integer >= 1/2";
    fail(ErrorKind::Domain, msg.str());
  }
  require_positive(x, "bessel_halfint");
  const int n = static_cast<int>(nu - 0.5);
  const SphericalValues sv = spherical_bessel(n, x);
  // J_{n+1/2}(x) = sqrt(2x/pi) j_n(x).
  const double s = std::sqrt(2.0 * x / kPi);
  const double ds = 0.5 / x;
  CylinderValues v;
  v.j = s * sv.j;
  v.jp = s * (sv.jp + ds * sv.j);
  v.y = s * sv.y;
  v.yp = s * (sv.yp + ds * sv.y);
  return v;
}

double bessel_j_halfint(double nu, double x) { return bessel_halfint(nu, x).j; }

std::complex<double> hankel1_halfint(double nu, double x) { return bessel_halfint(nu, x).h1(); }

CylinderValues cylinder(double nu, double x) {
  if (!(nu >= 0.0)) fail(ErrorKind::Domain, "cylinder: order must be >= 0");
  require_positive(x, "cylinder");
  if (is_halfint(nu)) return bessel_halfint(nu, x);
  CylinderValues v;
  v.j = std::cyl_bessel_j(nu, x);
  v.y = std::cyl_neumann(nu, x);
  // Z_nu' = Z_{nu-1} - nu/x Z_nu for nu >= 1, and -Z_1 for nu = 0.
  if (nu == 0.0) {
    v.jp = -std::cyl_bessel_j(1.0, x);
    v.yp = -std::cyl_neumann(1.0, x);
  } else {
    v.jp = nu / x * v.j - std::cyl_bessel_j(nu + 1.0, x);
    v.yp = nu / x * v.y - std::cyl_neumann(nu + 1.0, x);
  }
  if (!std::isfinite(v.y)) {
    v.y = -std::numeric_limits<double>::infinity();
    v.yp = std::numeric_limits<double>::infinity();
  }
  return v;
}

namespace {

// Maclaurin series, used for |z| < 3.
cplx erf_series(cplx z) {
  const cplx z2 = z * z;
  cplx term = z, sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx add = term / (2.0 * n + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum * (2.0 / std::sqrt(kPi));
}

// Laplace continued fraction for w(z), Im z >= 0 and |z| large enough:
// w(z) = (i/sqrt(pi)) / (z - (1/2) / (z - 1 / (z - (3/2) / (z - ...)))).
cplx faddeeva_cf(cplx z) {
  cplx f = kTiny, c = f, d = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double a = i == 0 ? 1.0 : -0.5 * i;
    d = z + a * d;
    if (d == 0.0) d = kTiny;
    c = z + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return cplx(0.0, 1.0 / std::sqrt(kPi)) * f;
  }
  fail(ErrorKind::Numerical, "Faddeeva continued fraction did not converge");
}

}  // namespace

std::complex<double> faddeeva(std::complex<double> z) {
  if (std::abs(z) < 3.0) {
    // w(z) = exp(-z^2) (1 - erf(-i z)).
    return std::exp(-z * z) * (1.0 - erf_series(cplx(z.imag(), -z.real())));
  }
  if (z.imag() >= 0.0) return faddeeva_cf(z);
  // Reflection w(z) = 2 exp(-z^2) - w(-z).
  return 2.0 * std::exp(-z * z) - faddeeva_cf(-z);
}

std::complex<double> erf(std::complex<double> z) {
  if (std::abs(z) < 3.0) return erf_series(z);
  if (z.real() < 0.0) return -erf(-z);
  // erf(z) = 1 - exp(-z^2) w(i z), with Re z >= 0 so Im(i z) >= 0.
  const cplx iz(-z.imag(), z.real());
  return 1.0 - std::exp(-z * z) * faddeeva_cf(iz);
}

}  // namespace ciscat
