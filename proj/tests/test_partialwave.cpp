#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "partialwave.hpp"
#include "special.hpp"
#include "support.hpp"

using namespace ciscat;
using std::numbers::pi;
using testing::rel_err;
using testing::uniform;

namespace {

struct PsiRow {
  double rho, phi, k, re, im;
};

// mpmath: -e^{i phi/2} e^{-i k rho cos phi} erf(e^{3 i pi/4} sqrt(2 k rho) cos(phi/2)).
constexpr PsiRow kPsiAB[] = {
    {2.0, 0.3, 1.0, 0.074242340702567247, -1.0688564666169007},
    {7.5, -2.0, 0.5, 1.1943036890430734, 0.60892873567465349},
    {0.4, 3.0, 10.0, -0.005524317197433228, -0.22567680212372829},
    {20.0, 1.2, 1.0, 1.0221323269416454, -0.41908894908885887},
    {1.0, -3.1, 2.0, 0.044296144066202041, -0.015497508825677907},
};

struct DiskRow {
  double k, a;
  int m;
  double re, im;
};

// -a_m J_nu(ka) / H_nu(ka), nu = |m - 1/2|, mpmath.
constexpr DiskRow kDisk[] = {
    {1, 1, 0, -0.82216870395113986, 0.17919832732722184},
    {1, 1, 1, -0.82216870395113986, 0.17919832732722184},
    {1, 1, 3, 0.012373596286969644, 0.011954951250121123},
    {0.01, 1, 0, -0.0071413047379001625, -0.0069998880956452074},
    {10, 1, 5, -0.69581865279152914, 0.71804548967411735},
    {2, 1.5, -2, 0.74428390976702908, -0.04157636998725601},
};

struct GaussRow {
  double height, width, nu, k, r_c, logderiv;
};

// R'/R at r_c for U = height exp(-(r/width)^2), mpmath odefun from the
// regular series.
constexpr GaussRow kGauss[] = {
    {2, 0.5, 0.5, 1, 3, -4.4869347647236302},
    {2, 0.5, 2.5, 1, 3, 0.3243078173362058},
    {-3, 0.7, 0.5, 2, 4.2, -2.9554382040005432},
    {0, 0.5, 1.5, 1.3, 2, -0.11488046497493695},
};

RadialPotential gaussian_within(double height, double width, double r_c) {
  return RadialPotential::smooth(
      [=](double r) { return height * std::exp(-(r / width) * (r / width)); }, r_c - 0.1);
}

}  // namespace

TEST_CASE("psi_ab against mpmath") {
  for (const PsiRow& r : kPsiAB) {
    CAPTURE(r.rho);
    CAPTURE(r.phi);
    CHECK(rel_err(psi_ab(r.rho, r.phi, r.k), {r.re, r.im}) < 1e-10);
  }
}

TEST_CASE("psi_ab nodal ray and origin") {
  for (double rho : {0.3, 2.0, 17.0}) {
    CHECK(std::abs(psi_ab(rho, pi, 1.0)) < 1e-15);
    CHECK(std::abs(psi_ab(rho, -pi, 1.0)) < 1e-15);
  }
  CHECK(std::abs(psi_ab(0.0, 0.7, 2.0)) == 0.0);
  CHECK_FAILS_WITH(psi_ab(1.0, 3.5, 1.0), ErrorKind::Domain);
  CHECK_FAILS_WITH(psi_ab(1.0, 0.5, 0.0), ErrorKind::Domain);
}

TEST_CASE("psi_ab approaches the incident wave") {
  // |psi_ab - psi_inc| at phi = pi/4 is 0.4318 / sqrt(k rho) (mpmath:
  // 0.0610622082610007 at k rho = 50, 0.0305335565375524 at 200).
  const double d50 = std::abs(psi_ab(50, pi / 4, 1) - psi_incident(50, pi / 4, 1));
  const double d200 = std::abs(psi_ab(200, pi / 4, 1) - psi_incident(200, pi / 4, 1));
  CHECK(d50 == doctest::Approx(0.0610622082610007).epsilon(1e-9));
  CHECK(d200 == doctest::Approx(0.0305335565375524).epsilon(1e-9));
  CHECK(d200 < 0.05);
}

TEST_CASE("low-energy limit keeps only the half-integer pair") {
  const double kr = 1e-3;
  const double j = cylinder(0.5, kr).j;
  const cplx lead = std::exp(cplx(0, -pi / 4));
  for (double phi : {-2.5, -1.0, 0.0, 0.4, 2.0}) {
    const cplx ratio = psi_ab(kr, phi, 1.0) / (j * (1.0 + std::exp(cplx(0, phi))));
    CHECK(std::abs(ratio - lead) < 5 * kr);
  }
}

TEST_CASE("pure flux-tube cross section") {
  CHECK(xs_pure_ab(0.5, 0.0) == doctest::Approx(1.0));
  CHECK(xs_pure_ab(0.5, 2 * pi / 3) == doctest::Approx(4.0));
  CHECK(xs_pure_ab(1.0, 0.3) == 0.0);
  CHECK(xs_pure_ab(2.0, 1.2) == 0.0);
  CHECK_FAILS_WITH(xs_pure_ab(0.5, pi), ErrorKind::Divergence);
}

TEST_CASE("free radial log-derivative is the regular Bessel one") {
  for (double nu : {0.5, 1.5, 4.5}) {
    for (double k : {0.3, 1.0, 4.0}) {
      const double r_c = 3.0;
      const CylinderValues c = cylinder(nu, k * r_c);
      const double want = k * c.jp / c.j;
      const double got = radial_logderiv(RadialPotential::none(), nu, k, r_c).value();
      CAPTURE(nu);
      CAPTURE(k);
      CHECK(std::abs(got - want) < 1e-9 * (1 + std::abs(want)));
    }
  }
}

TEST_CASE("Gaussian log-derivative against mpmath") {
  for (const GaussRow& r : kGauss) {
    CAPTURE(r.nu);
    const RadialPotential pot = gaussian_within(r.height, r.width, r.r_c);
    const double got = radial_logderiv(pot, r.nu, r.k, r.r_c).value();
    CHECK(std::abs(got - r.logderiv) < 1e-9 * std::abs(r.logderiv));
  }
}

TEST_CASE("log-derivative depends only on the order") {
  const RadialPotential pot = RadialPotential::gaussian(1.5, 0.4);
  const double r_c = pot.default_matching_radius(1.0);
  const LogDerivative y0 = radial_logderiv(pot, std::abs(0 - 0.5), 1.0, r_c);
  const LogDerivative y1 = radial_logderiv(pot, std::abs(1 - 0.5), 1.0, r_c);
  CHECK(std::abs(y0.value() - y1.value()) <= 1e-12 * std::abs(y0.value()));
  CHECK_FAILS_WITH(radial_logderiv(pot, 0.5, 1.0, 1.0), ErrorKind::Domain);
}

TEST_CASE("hard-disk coefficients against mpmath") {
  for (const DiskRow& r : kDisk) {
    CAPTURE(r.k);
    CAPTURE(r.m);
    CHECK(rel_err(b_hard_disk(r.k, r.a, 0.5, r.m), {r.re, r.im}) < 1e-12);
  }
}

TEST_CASE("integrating out from the disk reproduces the closed form") {
  const double k = 1.0, a = 1.0, r_c = 4.0;
  const RadialPotential disk = RadialPotential::hard_disk(a);
  for (int m : {0, 1, 3, -4}) {
    const LogDerivative y = radial_logderiv(disk, std::abs(m - 0.5), k, r_c);
    const cplx b = b_coefficient(y, k, r_c, 0.5, m);
    CAPTURE(m);
    CHECK(std::abs(b - b_hard_disk(k, a, 0.5, m)) < 1e-10);
  }
}

TEST_CASE("coefficients") {
  CHECK(std::abs(a_coefficient(0.5, 0) - std::exp(cplx(0, -pi / 4))) < 1e-15);
  CHECK(std::abs(a_coefficient(0.5, 3) - std::exp(cplx(0, -5 * pi / 4))) < 1e-15);

  const PartialWaveSolution free = solve(RadialPotential::none(), 0.5, 1.3);
  for (int m = free.m_min(); m <= free.m_max + 1; ++m) CHECK(free.b_m(m) == 0.0);

  const double r_c = 3.0;
  const LogDerivative y = radial_logderiv(RadialPotential::none(), 0.5, 1.0, r_c);
  const auto [a0, b0] = coefficients(y, 1.0, r_c, 0.5, 0);
  CHECK(std::abs(a0 - a_coefficient(0.5, 0)) < 1e-15);
  CHECK(std::abs(b0) < 1e-9);
}

TEST_CASE("coefficient symmetry at half flux") {
  const std::vector<RadialPotential> pots{RadialPotential::hard_disk(1.0),
                                          RadialPotential::gaussian(2.0, 0.6),
                                          RadialPotential::gaussian(-1.5, 0.8)};
  for (const RadialPotential& pot : pots) {
    CAPTURE(pot.label);
    SolveOptions opts;
    opts.exact_hard_disk = false;
    const PartialWaveSolution sol = solve(pot, 0.5, 1.7, opts);
    REQUIRE(sol.m_max >= 21);
    for (int n = 0; n <= 20; ++n) {
      CHECK(std::abs(sol.a_m(-n) - sol.a_m(n + 1)) <= 1e-12);
      CHECK(std::abs(sol.b_m(-n) - sol.b_m(n + 1)) <= 1e-12 * std::max(1.0, std::abs(sol.b_m(-n))));
    }
  }
}

TEST_CASE("folded and direct sums agree") {
  const PartialWaveSolution sol = solve(RadialPotential::hard_disk(1.0), 0.5, 2.0);
  const PartialWaveSolution gauss = solve(RadialPotential::gaussian(1.0, 0.5), 0.5, 1.0);
  for (const PartialWaveSolution* s : {&sol, &gauss}) {
    for (int n = 0; n < 20; ++n) {
      const double r = uniform(s->r_c + 0.5, s->r_c + 15.0);
      const double th = uniform(-pi, pi);
      const cplx direct = psi_total(r, th, *s);
      CHECK(std::abs(psi_total_folded(r, th, *s) - direct) < 1e-10);
      CHECK(std::abs(psi_total_fast(r, th, *s) - direct) < 1e-9);
    }
    for (double r : {s->r_c + 1.0, s->r_c + 9.0}) {
      CHECK(std::abs(psi_total_folded(r, pi, *s)) < 1e-12);
      CHECK(std::abs(psi_total_folded(r, -pi, *s)) < 1e-12);
      CHECK(std::abs(psi_total(r, pi, *s)) < 1e-10);
    }
  }
}

TEST_CASE("hard-disk reconstruction") {
  const double k = 1.0, a = 1.0;
  const PartialWaveSolution sol = solve(RadialPotential::hard_disk(a), 0.5, k);
  for (double kr : {5.0, 20.0, 50.0}) {
    for (double th : {-2.0, 0.3, 1.7}) {
      CAPTURE(kr);
      CHECK(std::abs(psi_total(kr / k, th, sol) - psi_hard_disk(kr / k, th, k, a)) < 1e-8);
    }
  }
}

TEST_CASE("partial-wave sum without scattering is psi_ab") {
  const PartialWaveSolution sol = solve(RadialPotential::none(), 0.5, 1.0);
  for (double th : {-2.9, -1.0, 0.0, 0.8, 2.5}) {
    CHECK(std::abs(psi_total(30.0, th, sol) - psi_ab(30.0, th, 1.0)) < 1e-6);
  }
}

TEST_CASE("flux-tube amplitude closed form and Abel sum") {
  for (double th : {0.0, 1.0, -2.0, 2.8}) {
    const cplx f = ab_amplitude(0.5, 1.0, th);
    CHECK(rel_err(ab_amplitude_abel(0.5, 1.0, th), f) < 1e-6);
    CHECK(1.0 * std::norm(f) == doctest::Approx(xs_pure_ab(0.5, th) / (2 * pi)).epsilon(1e-13));
  }
  CHECK(ab_amplitude(1.0, 1.0, 0.4) == cplx(0.0));
  CHECK_FAILS_WITH(ab_amplitude(0.5, 1.0, pi), ErrorKind::Divergence);
}

TEST_CASE("pure half flux is energy independent") {
  const std::vector<double> thetas{0.0, pi / 2, -pi / 2, 3 * pi / 4, -3 * pi / 4};
  for (double k : {0.5, 1.0, 2.0}) {
    const PartialWaveSolution sol = solve(RadialPotential::none(), 0.5, k);
    const std::vector<double> xs = differential_cross_section(sol, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const double want = xs_pure_ab(0.5, thetas[i]) / (2 * pi);
      CHECK(std::abs(xs[i] - want) < 0.005 * want);
    }
  }
}

TEST_CASE("low-energy hard disk") {
  std::vector<double> thetas;
  for (int i = 0; i < 360; ++i) thetas.push_back(2 * pi * (i + 0.5) / 360 - pi);

  const PartialWaveSolution s_wave = solve(RadialPotential::hard_disk(1.0), 0.0, 0.01);
  const std::vector<double> xs0 = differential_cross_section(s_wave, thetas);
  const auto [lo, hi] = std::minmax_element(xs0.begin(), xs0.end());
  CHECK(*hi / *lo < 1.1);

  // theta runs over (-pi, pi); the forward direction of the flux-tube formula
  // is theta = +-pi.
  const PartialWaveSolution half = solve(RadialPotential::hard_disk(1.0), 0.5, 0.01);
  const std::vector<double> xs = differential_cross_section(half, thetas);
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (pi - std::abs(thetas[i]) < 0.1 * pi) continue;
    const double pure = xs_pure_ab(0.5, thetas[i]) / (2 * pi);
    worst = std::max(worst, std::abs(xs[i] - pure) / pure);
  }
  CHECK(worst < 0.02);
}

TEST_CASE("matching radius independence") {
  const RadialPotential pot = RadialPotential::gaussian(2.0, 0.5);
  SolveOptions near, far;
  near.r_c = 3.5;
  far.r_c = 1.5 * 3.5;
  const PartialWaveSolution a = solve(pot, 0.5, 1.0, near);
  const PartialWaveSolution b = solve(pot, 0.5, 1.0, far);
  for (int m = -5; m <= 6; ++m) CHECK(std::abs(a.b_m(m) - b.b_m(m)) < 1e-8);
}

TEST_CASE("evaluation inside the matching radius is refused") {
  const PartialWaveSolution sol = solve(RadialPotential::hard_disk(1.0), 0.5, 1.0);
  CHECK_FAILS_WITH(psi_total(0.5, 0.0, sol), ErrorKind::Domain);
}
