#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mat2.hpp"
#include "models.hpp"

namespace ciscat {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kCIClearance = 1e-6;

/// Closed contour r(t), t in [0, 1], used for Wilson loops and winding
/// numbers. Circles run counterclockwise starting at angle `start_angle`.
class LoopPath {
 public:
  static LoopPath circle(Point2 center, double radius, double start_angle = 0.0);
  /// Closed polygon through the vertices (the closing edge is implied).
  static LoopPath polygon(std::vector<Point2> vertices);

  Point2 point(double t) const;
  /// dr/dt.
  Point2 tangent(double t) const;

  /// Number of smooth pieces; sample counts are kept multiples of this so
  /// every corner is a quadrature node.
  int pieces() const { return is_circle_ ? 1 : static_cast<int>(vertices_.size()); }
  bool is_circle() const { return is_circle_; }
  Point2 center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Point2>& vertices() const { return vertices_; }

  /// Shortest distance from the contour to p.
  double distance_to(Point2 p) const;
  /// Winding number of the contour about p (p must not be on the path).
  int winding_about(Point2 p) const;

 private:
  bool is_circle_ = true;
  Point2 center_{};
  double radius_ = 1.0;
  double start_angle_ = 0.0;
  std::vector<Point2> vertices_;
};

/// Checks the closure invariant and that no CI is within kCIClearance.
void validate_path(const LoopPath& path, std::span<const Point2> cis = {});

using AbelianField = std::function<std::array<double, 2>(double, double)>;
using UnitaryFunction = std::function<Mat2(double, double)>;

/// (h grad g - g grad h) / (2 (g^2 + h^2)).
std::array<double, 2> projected_gauge(const RealPairModel& model, double x, double y);
AbelianField projected_gauge_field(const RealPairModel& model);

/// Closed form of the projected potential of the two-CI model
/// (h = x (x0 - x), g = y).
std::array<double, 2> two_ci_gauge(double x, double y, double x0);

/// A_k = i U^dagger d_k U by central differences.
std::pair<Mat2, Mat2> nonabelian_gauge(const UnitaryFunction& u, double x, double y,
                                       double fd_step = 1e-5,
                                       std::span<const Point2> cis = {});

/// Ground-channel induced scalar sum_k |(A_k)_12|^2 / (2 mu) with mu = 1/2.
double scalar_correction(const UnitaryFunction& u, double x, double y,
                         double fd_step = 1e-5, std::span<const Point2> cis = {});

struct WilsonResult {
  std::complex<double> value;  // exp(i * integral)
  double integral = 0.0;       // loop integral of A . dr
  int samples = 0;
};

/// exp(i oint A . dr) by periodic composite trapezoid with sample doubling
/// until the phase moves by < 1e-8 (cap 2^20 samples).
WilsonResult wilson_loop(const AbelianField& a, const LoopPath& path,
                         std::span<const Point2> cis = {});

/// Product over enclosed CIs of exp(i pi sgn(g_y h_x - h_y g_x)).
int wilson_sign_predicted(const RealPairModel& model, std::span<const Point2> enclosed);

struct Region {
  double x_min, x_max, y_min, y_max;
};

struct CISearchResult {
  std::vector<Point2> points;
  std::vector<Point2> unresolved;  // sign-change cells where Newton failed
};

CISearchResult find_cis(const RealPairModel& model, const Region& region,
                        int grid_resolution = 64);

/// Max |d_x A_y - d_y A_x| over an n x n sample lattice of the region,
/// skipping samples within `exclusion_radius` of the listed CIs.
double curvature_check(const AbelianField& a, const Region& region, int n_samples,
                       std::span<const Point2> cis = {}, double exclusion_radius = 0.5,
                       double fd_step = 1e-4);

}  // namespace ciscat
