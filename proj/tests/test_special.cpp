#include <cmath>
#include <numbers>

#include "special.hpp"
#include "support.hpp"

using namespace ciscat;
using std::numbers::pi;
using testing::rel_err;
using testing::uniform;

namespace {

struct BesselRow {
  double nu, x, j, y, jp, yp;
};

// mpmath besselj / bessely and their derivatives, 40 digits.
constexpr BesselRow kBessel[] = {
    {0.5, 0.001, 0.025231321014980941, -25.231312604540041, 12.615652097049571, 12615.681533591035},
    {0.5, 0.7, 0.61436106679126507, -0.72939515852456283, 0.29056582510223061, 1.1353576085945243},
    {1.5, 10, 0.1979824927558931, 0.1584346223881903, -0.16696110966843445, 0.18794367297316961},
    {10.5, 31.4, -0.14426644043429756, -0.02635413823174202, 0.027427927891232543, -0.1355247664088729},
    {40.5, 1000, 0.024617483976220802, 0.005578702846324886, -0.0055864554012035294, 0.024594495453103882},
    {0, 2.5, -0.048383776468197996, 0.49807035961523189, -0.49709410246427404, -0.1459181379667858},
    {1, 0.3, 0.148318816273104, -2.2931051383885291, 0.48323019229461606, 6.8364102168239112},
    {2.7, 5, 0.29977887486530135, 0.24119815767237196, -0.24697035977251305, 0.22601712254456702},
    {7.3, 1.2, 2.4774787852373795e-6, -17847.991033631171, 1.4891392055061483e-5, 106856.63452435783},
};

struct ErfRow {
  double re, im, want_re, want_im;
};

// mpmath erf on the complex plane.
constexpr ErfRow kErf[] = {
    {0.5, 0.3, 0.56156518852421316, 0.26760586495760358},
    {2.9, -1, 0.99989473495434251, 1.8980647036418323e-5},
    {-2.12, 2.12, -1.178749973230413, -0.054434053744949682},
    {-7, 7, -1.0101953038192812, -0.056068649971793058},
    {4, 0.1, 0.99999998942056539, 1.1421049438186166e-8},
    {0.1, 4, 896390.58842697168, 918683.22696144983},
    {-0.7, 5, -2720498083.0712892, 4228141064.4749629},
    {30, -30, 1.0105659869745496, 0.0080745697524173899},
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("cylinder functions against mpmath") {
  for (const BesselRow& r : kBessel) {
    CAPTURE(r.nu);
    CAPTURE(r.x);
    const CylinderValues c = cylinder(r.nu, r.x);
    // Half-integer orders go through closed forms, the rest through the
    // standard library.
    const double tol = r.nu == std::floor(r.nu) + 0.5 ? 1e-12 : 1e-10;
    CHECK(rel(c.j, r.j) < tol);
    CHECK(rel(c.y, r.y) < tol);
    CHECK(rel(c.jp, r.jp) < tol);
    CHECK(rel(c.yp, r.yp) < tol);
  }
}

TEST_CASE("half-integer closed forms") {
  CHECK(bessel_j_halfint(0.5, pi / 2) == doctest::Approx(2 / pi).epsilon(1e-15));
  const std::complex<double> h = hankel1_halfint(0.5, 1.0);
  CHECK(std::abs(h) == doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-15));
  const std::complex<double> want = std::complex<double>(0, -1) * std::sqrt(2 / pi) *
                                    std::exp(std::complex<double>(0, 1));
  CHECK(rel_err(h, want) < 1e-14);
  CHECK_FAILS_WITH(bessel_halfint(0.5, 0.0), ErrorKind::Domain);
  CHECK_FAILS_WITH(bessel_halfint(0.5, -1.0), ErrorKind::Domain);
}

TEST_CASE("Wronskian") {
  for (int n = 0; n < 100; ++n) {
    const double x = std::exp(uniform(std::log(1e-3), std::log(1e3)));
    const double nu = std::floor(uniform(0, 30)) + 0.5;
    CAPTURE(nu);
    CAPTURE(x);
    const CylinderValues c = bessel_halfint(nu, x);
    const double w = c.j * c.yp - c.jp * c.y;
    if (!std::isfinite(c.y)) continue;
    CHECK(rel(w, 2 / (pi * x)) < 1e-11);
  }
  for (int n = 0; n < 100; ++n) {
    const double x = uniform(0.5, 50), nu = uniform(0, 12);
    const CylinderValues c = cylinder(nu, x);
    CHECK(rel(c.j * c.yp - c.jp * c.y, 2 / (pi * x)) < 1e-9);
  }
}

TEST_CASE("spherical Bessel") {
  const SphericalValues s0 = spherical_bessel(0, 2.0);
  CHECK(s0.j == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(s0.y == doctest::Approx(-std::cos(2.0) / 2.0).epsilon(1e-15));
  const SphericalValues s3 = spherical_bessel(3, 0.4);
  CHECK(s3.j == doctest::Approx(std::sph_bessel(3, 0.4)).epsilon(1e-13));
  CHECK(s3.y == doctest::Approx(std::sph_neumann(3, 0.4)).epsilon(1e-13));
  CHECK_FAILS_WITH(spherical_bessel(-1, 1.0), ErrorKind::Domain);
}

TEST_CASE("complex error function against mpmath") {
  for (const ErfRow& r : kErf) {
    CAPTURE(r.re);
    CAPTURE(r.im);
    const std::complex<double> got = ciscat::erf({r.re, r.im});
    CHECK(rel_err(got, {r.want_re, r.want_im}) < 1e-12);
  }
  for (double x : {-3.0, -0.4, 0.0, 0.2, 1.7})
    CHECK(ciscat::erf({x, 0}).real() == doctest::Approx(std::erf(x)).epsilon(1e-14));
  // w(z) = exp(-z^2) erfc(-iz)
  const std::complex<double> z(0.8, 0.6);
  const std::complex<double> iz(-0.6, 0.8);
  CHECK(rel_err(faddeeva(z), std::exp(-z * z) * (1.0 - ciscat::erf(-iz))) < 1e-12);
}
