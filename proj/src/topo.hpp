#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "field.hpp"
#include "gauge.hpp"

namespace ciscat {

using ComplexFunction = std::function<cplx(double, double)>;

struct PhaseLoopResult {
  double charge = 0.0;    // net phase change / 2 pi
  double winding = 0.0;   // same quantity before any end extrapolation
  double residual = 0.0;  // distance of charge to the nearest multiple of 1/2
  bool converged = false;
  int samples = 0;
};

struct LoopOptions {
  // Open loops start and end on a nodal ray: samples sit at cell midpoints of
  // t and the phase is extrapolated to both ends.
  bool open = false;
  double open_gap = 0.0;     // t excluded at each end of an open loop
  double eps_amp = 0.02;     // relative to the largest |psi| on the loop
  double tolerance = 1e-3;   // stability under sample doubling
  int min_samples = 64;
  int max_samples = 1 << 16;
};

PhaseLoopResult topological_charge(const ComplexFunction& psi, const LoopPath& loop,
                                   const LoopOptions& options = {});
PhaseLoopResult topological_charge(const ScalarField& psi, const LoopPath& loop,
                                   const LoopOptions& options = {});

/// Bilinear interpolation of a grid field (Domain error outside the node hull).
ComplexFunction interpolate(const ScalarField& psi);

/// Circle about `center`. With `open_angle`, the loop starts and ends on the
/// ray at that angle; with `auto_open`, on the ray of smallest |psi|.
PhaseLoopResult charge_at_point(const ComplexFunction& psi, Point2 center, double radius,
                                std::optional<double> open_angle = std::nullopt,
                                const LoopOptions& options = {});
PhaseLoopResult charge_at_point(const ScalarField& psi, Point2 center, double radius,
                                std::optional<double> open_angle = std::nullopt,
                                const LoopOptions& options = {});
/// Angle of the smallest |psi| on a circle (used to open a loop at a nodal ray).
double weakest_angle(const ComplexFunction& psi, Point2 center, double radius,
                     int samples = 720);

struct DislocationOptions {
  double eps_amp = 0.02;
  double eps_ph = 0.3;
  int min_cells = 5;
  // Half-width of the transverse stencil. 1 is the single-cell edge test;
  // larger values look for a phase flip spread over several cells.
  int stencil = 1;
  double local_amp = 0.35;  // node amplitude / smaller flank amplitude
};

struct DislocationSegment {
  std::vector<Point2> points;  // site positions ordered along the segment
  double suppression = 0.0;    // mean cell amplitude / field max
  double phase_jump = 0.0;     // mean |jump| across the marked edges
  int cells = 0;

  double length() const;
  /// Least-squares line eta = intercept + slope * xi through the points.
  std::pair<double, double> fit_line() const;
};

struct DislocationSet {
  std::vector<DislocationSegment> segments;
  double field_max = 0.0;
  int marked_cells = 0;
};

DislocationSet dislocation_lines(const ScalarField& psi, const DislocationOptions& options = {});

/// The dislocation line along the axis eta = eta_axis, over xi > xi_origin
/// (downstream for incidence toward +xi). Only segments running along the
/// axis count; collinear pieces closer than `tolerance` are joined.
struct AxisReport {
  bool found = false;
  int segment = -1;        // longest piece
  int pieces = 0;          // collinear pieces joined into the line
  double xi_start = 0.0;   // upstream end
  double xi_end = 0.0;
  double max_offset = 0.0; // largest |eta - eta_axis| over the segment
  double intercept = 0.0;  // fitted eta at xi_origin
  double coverage = 0.0;   // share of [xi_origin, xi_limit] spanned by the line
};

AxisReport axis_segment(const DislocationSet& set, double eta_axis, double xi_origin,
                        double xi_limit, double tolerance, int direction = +1);

}  // namespace ciscat
