#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ciscat {

using cplx = std::complex<double>;

/// Short-range radial potential U(r). A hard disk of radius `radius` imposes
/// R(radius) = 0; a smooth potential vanishes beyond `range`.
struct RadialPotential {
  enum class Kind { None, HardDisk, Smooth };
  Kind kind = Kind::None;
  double radius = 0.0;
  double range = 0.0;
  std::function<double(double)> u;
  std::string label = "none";

  static RadialPotential none();
  static RadialPotential hard_disk(double a);
  /// height * exp(-(r / width)^2); its range is taken as 6 * width.
  static RadialPotential gaussian(double height, double width);
  static RadialPotential smooth(std::function<double(double)> u, double range,
                                std::string label = "smooth");

  double operator()(double r) const { return kind == Kind::Smooth ? u(r) : 0.0; }
  /// Default matching radius for wavenumber k.
  double default_matching_radius(double k) const;
};

/// Closed-form wavefunction of the half-flux tube (alpha = 1/2);
/// phi = atan2(y, x) in [-pi, pi].
cplx psi_ab(double rho, double phi, double k);
/// exp(-i k x) exp(i phi / 2).
cplx psi_incident(double rho, double phi, double k);

/// lambda dsigma/dtheta = sin^2(pi alpha) / cos^2(theta / 2).
double xs_pure_ab(double alpha, double theta);

/// Radial log-derivative kept in homogeneous form so the R = 0 case stays
/// finite: y = dr / r = R'(r_c) / R(r_c) (derivative in r).
struct LogDerivative {
  double dr = 0.0;
  double r = 1.0;
  double value() const { return dr / r; }
};

/// Renormalized Numerov integration of the radial equation from the regular
/// origin series (or from R(a) = 0 for a hard disk) out to r_c, with one
/// Richardson step between n_steps and 2 n_steps.
LogDerivative radial_logderiv(const RadialPotential& pot, double nu, double k, double r_c,
                              int n_steps = 4096);

/// a_m = (-i)^{|m - alpha|}.
cplx a_coefficient(double alpha, int m);

/// b_m from the log-derivative at r_c.
cplx b_coefficient(const LogDerivative& y, double k, double r_c, double alpha, int m);
/// Hard-disk limit b_m = -a_m J_nu(ka) / H_nu(ka).
cplx b_hard_disk(double k, double a, double alpha, int m);

std::pair<cplx, cplx> coefficients(const LogDerivative& y, double k, double r_c, double alpha,
                                   int m);

struct PartialWaveSolution {
  double alpha = 0.5;
  double k = 1.0;
  int m_max = 40;  // table covers m in [-m_max, m_max + 1]
  double r_c = 0.0;
  RadialPotential::Kind kind = RadialPotential::Kind::None;
  double hard_disk_radius = 0.0;
  std::vector<cplx> a;
  std::vector<cplx> b;
  std::vector<double> y;  // R'/R at r_c (inf for a node at r_c)

  int m_min() const { return -m_max; }
  std::size_t slot(int m) const { return static_cast<std::size_t>(m + m_max); }
  bool in_table(int m) const { return m >= -m_max && m <= m_max + 1; }
  cplx a_m(int m) const;
  cplx b_m(int m) const;
};

struct SolveOptions {
  int m_max = 40;
  double r_c = 0.0;           // 0: RadialPotential::default_matching_radius
  bool exact_hard_disk = true;  // closed-form b_m instead of Numerov for hard disks
  int n_steps = 4096;
  int m_cap = 4096;
};

/// Builds the coefficient tables, extending m_max until the end coefficients
/// fall below 1e-12 of the largest |b_m|.
PartialWaveSolution solve(const RadialPotential& pot, double alpha, double k,
                          const SolveOptions& options = {});

/// Direct partial-wave sum; r must lie outside the matching radius.
cplx psi_total(double r, double theta, const PartialWaveSolution& sol);
/// Folded form for alpha = 1/2, pairing m = n with m = 1 - n.
cplx psi_total_folded(double r, double theta, const PartialWaveSolution& sol);
/// sum_m b_m H_nu(kr) e^{i m theta} by Hankel recurrence; alpha = 1/2 only.
cplx psi_scattered_fast(double r, double theta, const PartialWaveSolution& sol);
/// psi_ab + psi_scattered_fast (alpha = 1/2 only).
cplx psi_total_fast(double r, double theta, const PartialWaveSolution& sol);

/// Cylinder-plus-flux wavefunction psi_ab - psi_a, summed explicitly.
cplx psi_hard_disk(double r, double theta, double k, double a);

/// Closed-form pure flux-tube scattering amplitude (0 for integer alpha).
cplx ab_amplitude(double alpha, double k, double theta);
/// The same amplitude as an Abel-summed partial-wave series with
/// Richardson extrapolation in the damping parameter.
cplx ab_amplitude_abel(double alpha, double k, double theta);
/// Full amplitude f(theta): flux-tube part plus the outgoing b_m sum.
cplx scattering_amplitude(const PartialWaveSolution& sol, double theta);

/// k dsigma/dtheta = k |f|^2 at each angle.
std::vector<double> differential_cross_section(const PartialWaveSolution& sol,
                                               std::span<const double> thetas);

}  // namespace ciscat
