#include "field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "spectral.hpp"

namespace ciscat {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SpinorField& field, const UnitaryField& frames) {
  if (frames.size() != field.grid.size())
    fail(ErrorKind::ContractViolation,
         "unitary field has " + std::to_string(frames.size()) +
             " nodes, grid has " + std::to_string(field.grid.size()));
}

void require_unitary(const UnitaryField& frames) {
  for (std::size_t n = 0; n < frames.size(); ++n) {
    const double defect = unitarity_defect(frames[n]);
    if (!(defect <= 1e-12)) {
      std::ostringstream msg;
      msg << "non-unitary matrix at node " << n << " (defect " << defect << ")";
      fail(ErrorKind::ContractViolation, msg.str());
    }
  }
}

}  // namespace

Grid2D::Grid2D(int n_xi, int n_eta, double xi_min, double xi_max,
               double eta_min, double eta_max)
    : n_xi_(n_xi), n_eta_(n_eta), xi_min_(xi_min), xi_max_(xi_max),
      eta_min_(eta_min), eta_max_(eta_max) {
  if (n_xi < 8 || n_eta < 8 || !is_power_of_two(n_xi) || !is_power_of_two(n_eta))
    fail(ErrorKind::InvalidGrid, "grid dimensions must be powers of two >= 8, got " +
                                     std::to_string(n_xi) + "x" + std::to_string(n_eta));
  if (!(xi_max > xi_min) || !(eta_max > eta_min) || !std::isfinite(xi_min) ||
      !std::isfinite(xi_max) || !std::isfinite(eta_min) || !std::isfinite(eta_max))
    fail(ErrorKind::InvalidGrid, "grid ranges must be finite increasing intervals");
}

double Grid2D::k_xi(int i) const {
  const int m = i < n_xi_ / 2 ? i : i - n_xi_;
  return 2.0 * std::numbers::pi * m / (xi_max_ - xi_min_);
}

double Grid2D::k_eta(int j) const {
  const int m = j < n_eta_ / 2 ? j : j - n_eta_;
  return 2.0 * std::numbers::pi * m / (eta_max_ - eta_min_);
}

void validate(const SpinorField& field) {
  const std::size_t n = field.grid.size();
  if (n == 0 || field.g1.size() != n || field.g2.size() != n)
    fail(ErrorKind::InvalidField, "field storage does not match its grid");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(field.g1[k].real()) || !std::isfinite(field.g1[k].imag()) ||
        !std::isfinite(field.g2[k].real()) || !std::isfinite(field.g2[k].imag()))
      fail(ErrorKind::InvalidField, "non-finite amplitude at node " + std::to_string(k));
  }
}

std::pair<double, double> channel_norms(const SpinorField& field) {
  validate(field);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < field.grid.size(); ++k) {
    s1 += std::norm(field.g1[k]);
    s2 += std::norm(field.g2[k]);
  }
  const double area = field.grid.cell_area();
  return {s1 * area, s2 * area};
}

double norm(const SpinorField& field) {
  const auto [a, b] = channel_norms(field);
  return a + b;
}

std::pair<double, double> populations_in_frame(const SpinorField& field,
                                               const UnitaryField& frames) {
  validate(field);
  require_same_grid(field, frames);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Vec2 f = frames[k].adjoint() * field.at(k);
    s1 += std::norm(f.c1);
    s2 += std::norm(f.c2);
  }
  const double area = field.grid.cell_area();
  return {s1 * area, s2 * area};
}

SpinorField to_diabatic(const SpinorField& adiabatic, const UnitaryField& frames) {
  validate(adiabatic);
  require_same_grid(adiabatic, frames);
  require_unitary(frames);
  SpinorField out(adiabatic.grid, adiabatic.tau);
  for (std::size_t k = 0; k < frames.size(); ++k)
    out.set(k, frames[k] * adiabatic.at(k));
  return out;
}

SpinorField to_adiabatic(const SpinorField& diabatic, const UnitaryField& frames) {
  validate(diabatic);
  require_same_grid(diabatic, frames);
  require_unitary(frames);
  SpinorField out(diabatic.grid, diabatic.tau);
  for (std::size_t k = 0; k < frames.size(); ++k)
    out.set(k, frames[k].adjoint() * diabatic.at(k));
  return out;
}

SpinorField spectral_roundtrip(const SpinorField& field) {
  validate(field);
  SpectralTransform fft(field.grid);
  SpinorField out = field;
  fft.forward(out.g1);
  fft.forward(out.g2);
  fft.inverse(out.g1);
  fft.inverse(out.g2);
  return out;
}

ScalarField channel(const SpinorField& field, int which) {
  if (which != 1 && which != 2)
    fail(ErrorKind::ContractViolation, "channel index must be 1 or 2");
  ScalarField out(field.grid);
  out.values = which == 1 ? field.g1 : field.g2;
  return out;
}

}  // namespace ciscat
