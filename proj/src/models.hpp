#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "field.hpp"
#include "mat2.hpp"

namespace ciscat {

/// Radially symmetric scalar obstacle V0 * exp(-(r / r_b)^8), centred at the
/// origin and added to both diabatic diagonal entries.
struct BarrierSpec {
  bool enabled = false;
  double height = 50.0;
  double radius = 1.0;
};

double barrier_value(const BarrierSpec& spec, double x, double y);

enum class ModelKind {
  Free,             // zero coupling, kinetic motion only
  LinearJT,         // h = x, c = y
  CappedJT,         // h = Xi x, c = Xi y
  TwistedCappedJT,  // h = Xi x, c = Xi y exp(-i phi)
  TwoCI,            // h = x (x0 - x), c = y, optionally capped like CappedJT
};

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct ModelParams {
  double delta = 1.0;  // asymptotic half gap
  double rho0 = 5.0;   // cone radius (for TwoCI: cap scale on sqrt(h^2 + g^2); 0 disables)
  double x0 = 3.0;     // second intersection of TwoCI
  BarrierSpec barrier;
};

/// Delta * [theta(rho - rho0) / rho + theta(rho0 - rho) / rho0], theta(0) = 1/2.
double xi_factor(double rho, double rho0, double delta);

/// Real-valued (h, g) pair with its Jacobian, the input of the gauge analysis
/// of a real two-state Hamiltonian [[h, g], [g, -h]].
struct RealPairModel {
  std::function<double(double, double)> h;
  std::function<double(double, double)> g;
  // Returns {h_x, h_y, g_x, g_y}; empty means central differences.
  std::function<std::array<double, 4>(double, double)> jacobian;

  std::array<double, 4> gradient(double x, double y, double step = 1e-5) const;
};

/// Traceless Hermitian two-state potential [[h, c], [conj(c), -h]] plus an
/// optional scalar barrier.
class TwoStatePotential {
 public:
  TwoStatePotential() = default;
  TwoStatePotential(ModelKind kind, ModelParams params);

  ModelKind kind() const { return kind_; }
  const ModelParams& params() const { return params_; }
  std::string label() const { return to_string(kind_); }

  double h(double x, double y) const;
  cplx c(double x, double y) const;
  double scalar(double x, double y) const;

  /// Traceless part [[h, c], [c*, -h]].
  Mat2 matrix(double x, double y) const;

  /// (e_minus, e_plus) = -/+ sqrt(h^2 + |c|^2); the barrier is excluded.
  std::pair<double, double> eigenvalues(double x, double y) const;

  /// Single-valued unitary whose columns are the (excited, ground)
  /// eigenvectors: matrix = U diag(E, -E) U^dagger. Throws SingularBasis at an
  /// intersection.
  Mat2 frame(double x, double y) const;

  /// Underlying real (h, g) pair for gauge analysis. The capping factor is a
  /// positive scale and drops out of every gauge quantity, so the uncapped
  /// pair is returned. Throws for TwistedCappedJT (complex coupling).
  RealPairModel real_pair() const;

 private:
  double raw_h(double x, double y) const;
  double raw_g(double x, double y) const;
  double scale(double x, double y) const;

  ModelKind kind_ = ModelKind::Free;
  ModelParams params_{};
};

/// U_c(phi) = exp(-i sigma_2 phi / 2) exp(i sigma_3 phi / 2).
Mat2 u_c(double phi);
/// The real Longuet-Higgins rotation; changes sign under phi -> phi + 2 pi.
Mat2 u_lhh(double phi);
/// Single-valued frame of the twisted model.
Mat2 u_d(double phi);
/// Single-valued frame of [[h, g], [g, -h]]; h = g = 0 is a CI.
Mat2 u_general(double h, double g);

UnitaryField frame_field(const TwoStatePotential& model, const Grid2D& grid);

/// (p_ground, p_excited) of a diabatic field in the model's eigenbasis.
std::pair<double, double> adiabatic_populations(const SpinorField& field,
                                                const TwoStatePotential& model);

}  // namespace ciscat
