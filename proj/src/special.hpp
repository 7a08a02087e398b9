#pragma once

#include <complex>

namespace ciscat {

/// Cylinder functions of one order at one argument, with x-derivatives.
struct CylinderValues {
  double j = 0.0;
  double jp = 0.0;
  double y = 0.0;
  double yp = 0.0;

  std::complex<double> h1() const { return {j, y}; }
  std::complex<double> h1p() const { return {jp, yp}; }
};

/// Spherical Bessel j_n, y_n and derivatives, n >= 0, x > 0.
/// y_n by upward recurrence; j_n from the continued fraction for j_{n+1}/j_n
/// and the Wronskian, which stays accurate where upward recurrence does not.
struct SphericalValues {
  double j, jp, y, yp;
};
SphericalValues spherical_bessel(int n, double x);

/// Half-integer order nu = n + 1/2 (n >= 0), x > 0.
CylinderValues bessel_halfint(double nu, double x);
double bessel_j_halfint(double nu, double x);
std::complex<double> hankel1_halfint(double nu, double x);

/// Any order nu >= 0, x > 0. Half-integer orders go through the closed forms;
/// the rest through the standard library.
CylinderValues cylinder(double nu, double x);

/// Error function of a complex argument (relative accuracy ~1e-13).
std::complex<double> erf(std::complex<double> z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
std::complex<double> faddeeva(std::complex<double> z);

}  // namespace ciscat
