#pragma once

#include <functional>
#include <vector>

#include "field.hpp"
#include "models.hpp"
#include "spectral.hpp"

namespace ciscat {

/// Initial vibronic packet: Gaussian along the incidence axis (xi) times a
/// flat slab across it with raised-cosine edges, carrying e^{i k dir xi}.
struct PacketSpec {
  double xi0 = -20.5;
  double eta0 = 0.0;
  int direction = +1;        // +1 travels toward +xi, -1 toward -xi
  double sigma_long = 3.8;   // amplitude Gaussian exp(-(xi - xi0)^2 / (2 sigma^2))
  double half_width = 12.0;  // flat part of the slab
  double rolloff = 4.0;      // raised-cosine edge length
};

/// Multiplicative edge mask [0.5 (1 + cos(pi d))]^(strength * dtau / 2) with d
/// running 0 -> 1 across the outer `margin` fraction of each axis. The dtau
/// scaling makes the absorption per unit time independent of the step. The
/// mask acts together with the potential factor, like an absorbing potential.
struct AbsorberSpec {
  enum class Kind { None, Mask };
  Kind kind = Kind::Mask;
  double margin = 0.1;
  double strength = 8.0;
};

struct PropagationConfig {
  Grid2D grid{512, 512, -40.0, 40.0, -40.0, 40.0};
  TwoStatePotential model{ModelKind::CappedJT, ModelParams{}};
  double beta = 1.0;      // k^2 / Delta
  double carrier_k = 0.0; // > 0 overrides sqrt(beta * delta)
  double dtau = 0.005;
  int n_steps = 0;        // 0: stop when the transmitted peak passes the marker
  int snapshot_every = 0; // 0: final snapshot only
  double marker_fraction = 0.75;
  double max_tau = 0.0;   // 0: derived from the group speed
  PacketSpec packet;
  AbsorberSpec absorber;

  double wavenumber() const;
};

/// Throws ErrorKind::Config on any violated precondition.
void validate(const PropagationConfig& config);

struct DiagnosticRecord {
  int step = 0;
  double tau = 0.0;
  double norm = 0.0;
  double p_ground = 0.0;
  double p_excited = 0.0;
  double absorbed = 0.0;
  double backscatter = 0.0;
};

struct Trajectory {
  std::vector<SpinorField> snapshots;
  std::vector<DiagnosticRecord> diagnostics;
};

/// Launch-side probability of the dividing line xi = line_xi, normalised by
/// the surviving norm; direction is the incidence direction (+1 / -1).
double backscatter_fraction(const SpinorField& field, double line_xi, int direction = +1);

/// Split-operator propagator with all per-node factors precomputed.
class Propagator {
 public:
  Propagator(const Grid2D& grid, const TwoStatePotential& model, double dtau,
             const AbsorberSpec& absorber = {AbsorberSpec::Kind::None});

  const Grid2D& grid() const { return grid_; }
  double dtau() const { return dtau_; }

  /// exp(+i dtau/2 Laplacian) on both components.
  void kinetic_half(SpinorField& field) const;
  /// exp(-i dtau H) nodewise, including the scalar barrier.
  void potential(SpinorField& field) const;
  /// Applies the edge mask; returns the probability removed.
  double absorb(SpinorField& field) const;
  /// Strang step K/2 (M V) K/2. Returns the mass removed by the absorber.
  double step(SpinorField& field) const;
  /// n Strang steps with the inner kinetic half-steps fused into full ones.
  double advance(SpinorField& field, int n) const;

  const std::vector<double>& mask() const { return mask_; }

 private:
  Grid2D grid_;
  double dtau_;
  bool absorbing_;
  SpectralTransform fft_;

  void kinetic(SpinorField& field, const ComplexArray& factor) const;
  double potential_and_absorb(SpinorField& field) const;
  // Kinetic phases in the transposed spectral layout, already divided by N.
  ComplexArray kinetic_half_;
  ComplexArray kinetic_full_;
  std::vector<Mat2> potential_;
  std::vector<double> mask_;
};

/// Closed form exp(-i dtau [[h, c], [c*, -h]]).
Mat2 potential_propagator(double h, cplx c, double dtau);

SpinorField potential_step(const SpinorField& field, const TwoStatePotential& model,
                           double dtau);
SpinorField kinetic_half_step(const SpinorField& field, double dtau);
SpinorField step(const SpinorField& field, const TwoStatePotential& model, double dtau);

/// Ground-state packet F = (0, psi0) mapped to the diabatic picture G = U F.
SpinorField prepare_packet(const PropagationConfig& config);
/// The adiabatic-picture packet profile psi0 (normalised), before mapping.
ScalarField packet_profile(const PropagationConfig& config);

/// <k_xi> from the spectral density of both components.
double mean_wavenumber_xi(const SpinorField& field);
/// Spectral kinetic plus nodewise potential expectation.
double energy(const SpinorField& field, const TwoStatePotential& model);

using SnapshotObserver = std::function<void(int index, const SpinorField&)>;

/// Propagates per the config. Snapshots are handed to `observer` as they are
/// produced instead of being retained.
std::vector<DiagnosticRecord> run_streaming(const PropagationConfig& config,
                                            const SnapshotObserver& observer);
Trajectory run(const PropagationConfig& config);

}  // namespace ciscat
