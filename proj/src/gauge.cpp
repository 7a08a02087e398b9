#include "gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ciscat {

namespace {

using namespace std::complex_literals;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double segment_distance(Point2 a, Point2 b, Point2 p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y);
}

void check_clearance(double x, double y, std::span<const Point2> cis) {
  for (const Point2& c : cis) {
    if (std::hypot(x - c.x, y - c.y) < kCIClearance) {
      std::ostringstream msg;
      msg << "gauge potential evaluated within " << kCIClearance << " of the CI at ("
          << c.x << ", " << c.y << ")";
      fail(ErrorKind::SingularBasis, msg.str());
    }
  }
}

// Trapezoid sum of f over [0, 1] with n intervals; endpoints halved.
template <class F>
double trapezoid(const F& f, int n) {
  double sum = 0.5 * (f(0.0) + f(1.0));
  for (int k = 1; k < n; ++k) sum += f(static_cast<double>(k) / n);
  return sum / n;
}

// Sum of the n-interval midpoints, used to refine a trapezoid sum in place.
template <class F>
double midpoints(const F& f, int n) {
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += f((k + 0.5) / n);
  return sum / n;
}

}  // namespace

LoopPath LoopPath::circle(Point2 center, double radius, double start_angle) {
  if (!(radius > 0.0)) fail(ErrorKind::ContractViolation, "circle radius must be > 0");
  LoopPath p;
  p.is_circle_ = true;
  p.center_ = center;
  p.radius_ = radius;
  p.start_angle_ = start_angle;
  return p;
}

LoopPath LoopPath::polygon(std::vector<Point2> vertices) {
  if (vertices.size() < 3) fail(ErrorKind::ContractViolation, "polygon needs >= 3 vertices");
  const Point2 first = vertices.front(), last = vertices.back();
  if (std::hypot(first.x - last.x, first.y - last.y) <= 1e-14) vertices.pop_back();
  if (vertices.size() < 3) fail(ErrorKind::ContractViolation, "polygon needs >= 3 vertices");
  LoopPath p;
  p.is_circle_ = false;
  p.vertices_ = std::move(vertices);
  return p;
}

Point2 LoopPath::point(double t) const {
  if (is_circle_) {
    const double a = start_angle_ + kTwoPi * t;
    return {center_.x + radius_ * std::cos(a), center_.y + radius_ * std::sin(a)};
  }
  const int n = pieces();
  double s = t * n;
  int k = std::clamp(static_cast<int>(std::floor(s)), 0, n - 1);
  s -= k;
  const Point2 a = vertices_[k];
  const Point2 b = vertices_[(k + 1) % n];
  return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
}

Point2 LoopPath::tangent(double t) const {
  if (is_circle_) {
    const double a = start_angle_ + kTwoPi * t;
    return {-kTwoPi * radius_ * std::sin(a), kTwoPi * radius_ * std::cos(a)};
  }
  const int n = pieces();
  const int k = std::clamp(static_cast<int>(std::floor(t * n)), 0, n - 1);
  const Point2 a = vertices_[k];
  const Point2 b = vertices_[(k + 1) % n];
  return {n * (b.x - a.x), n * (b.y - a.y)};
}

double LoopPath::distance_to(Point2 p) const {
  if (is_circle_) return std::abs(std::hypot(p.x - center_.x, p.y - center_.y) - radius_);
  double best = INFINITY;
  const int n = pieces();
  for (int k = 0; k < n; ++k)
    best = std::min(best, segment_distance(vertices_[k], vertices_[(k + 1) % n], p));
  return best;
}

int LoopPath::winding_about(Point2 p) const {
  if (is_circle_) return std::hypot(p.x - center_.x, p.y - center_.y) < radius_ ? 1 : 0;
  double total = 0.0;
  const int n = pieces();
  for (int k = 0; k < n; ++k) {
    const Point2 a = vertices_[k], b = vertices_[(k + 1) % n];
    const double a1 = std::atan2(a.y - p.y, a.x - p.x);
    const double a2 = std::atan2(b.y - p.y, b.x - p.x);
    double d = a2 - a1;
    while (d > std::numbers::pi) d -= kTwoPi;
    while (d <= -std::numbers::pi) d += kTwoPi;
    total += d;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

void validate_path(const LoopPath& path, std::span<const Point2> cis) {
  const Point2 a = path.point(0.0), b = path.point(1.0);
  if (std::hypot(a.x - b.x, a.y - b.y) > 1e-14 * std::max(1.0, path.radius()))
    fail(ErrorKind::ContractViolation, "loop path is not closed");
  for (const Point2& c : cis) {
    if (path.distance_to(c) < kCIClearance) {
      std::ostringstream msg;
      msg << "loop passes within " << kCIClearance << " of the CI at (" << c.x << ", "
          << c.y << ")";
      fail(ErrorKind::ContractViolation, msg.str());
    }
  }
}

std::array<double, 2> projected_gauge(const RealPairModel& model, double x, double y) {
  const double h = model.h(x, y);
  const double g = model.g(x, y);
  const double d = 2.0 * (g * g + h * h);
  if (d == 0.0) {
    std::ostringstream msg;
    msg << "projected gauge potential is singular at CI (" << x << ", " << y << ")";
    fail(ErrorKind::SingularBasis, msg.str());
  }
  const auto [hx, hy, gx, gy] = model.gradient(x, y);
  return {(h * gx - g * hx) / d, (h * gy - g * hy) / d};
}

AbelianField projected_gauge_field(const RealPairModel& model) {
  return [model](double x, double y) { return projected_gauge(model, x, y); };
}

std::array<double, 2> two_ci_gauge(double x, double y, double x0) {
  const double q = x * (x0 - x);
  const double d = 2.0 * (y * y + q * q);
  if (d == 0.0) fail(ErrorKind::SingularBasis, "two-CI gauge potential singular at a CI");
  return {y * (2.0 * x - x0) / d, q / d};
}

std::pair<Mat2, Mat2> nonabelian_gauge(const UnitaryFunction& u, double x, double y,
                                       double fd_step, std::span<const Point2> cis) {
  check_clearance(x, y, cis);
  const Mat2 ud = u(x, y).adjoint();
  const cplx f = 1i / (2.0 * fd_step);
  const Mat2 dx = u(x + fd_step, y) - u(x - fd_step, y);
  const Mat2 dy = u(x, y + fd_step) - u(x, y - fd_step);
  return {(ud * dx) * f, (ud * dy) * f};
}

double scalar_correction(const UnitaryFunction& u, double x, double y, double fd_step,
                         std::span<const Point2> cis) {
  const auto [ax, ay] = nonabelian_gauge(u, x, y, fd_step, cis);
  constexpr double reduced_mass = 0.5;
  return (std::norm(ax.a12) + std::norm(ay.a12)) / (2.0 * reduced_mass);
}

WilsonResult wilson_loop(const AbelianField& a, const LoopPath& path,
                         std::span<const Point2> cis) {
  validate_path(path, cis);
  constexpr int kCap = 1 << 20;
  constexpr double kTol = 1e-8;

  WilsonResult result;
  if (path.is_circle()) {
    auto f = [&](double t) {
      const Point2 r = path.point(t), d = path.tangent(t);
      const auto av = a(r.x, r.y);
      return av[0] * d.x + av[1] * d.y;
    };
    // Periodic integrand: the rectangle rule converges geometrically.
    int n = 64;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += f(static_cast<double>(k) / n);
    double prev = sum / n;
    while (true) {
      sum += midpoints(f, n) * n;
      n *= 2;
      const double cur = sum / n;
      if (std::abs(cur - prev) < kTol) {
        result.integral = cur;
        break;
      }
      if (n >= kCap)
        fail(ErrorKind::Quadrature, "Wilson loop quadrature did not converge within 2^20 samples");
      prev = cur;
    }
    result.samples = n;
  } else {
    const int pieces = path.pieces();
    const auto& v = path.vertices();
    double total = 0.0;
    int used = 0;
    for (int k = 0; k < pieces; ++k) {
      const Point2 p0 = v[k], p1 = v[(k + 1) % pieces];
      auto f = [&](double s) {
        const auto av = a(p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y));
        return av[0] * (p1.x - p0.x) + av[1] * (p1.y - p0.y);
      };
      // Romberg: trapezoid doubling with Richardson extrapolation.
      int n = 64;
      double t_prev = trapezoid(f, n);
      std::vector<double> row{t_prev};
      double best = t_prev;
      bool converged = false;
      while (n < kCap / pieces) {
        const double t_cur = 0.5 * (t_prev + midpoints(f, n));
        n *= 2;
        std::vector<double> next{t_cur};
        double factor = 4.0;
        for (std::size_t j = 0; j < row.size() && j < 4; ++j) {
          next.push_back(next[j] + (next[j] - row[j]) / (factor - 1.0));
          factor *= 4.0;
        }
        const double estimate = next.back();
        if (std::abs(estimate - best) < kTol / pieces) {
          best = estimate;
          converged = true;
          break;
        }
        best = estimate;
        row = std::move(next);
        t_prev = t_cur;
      }
      if (!converged)
        fail(ErrorKind::Quadrature, "Wilson loop quadrature did not converge within 2^20 samples");
      total += best;
      used += n;
    }
    result.integral = total;
    result.samples = used;
  }
  result.value = std::exp(1i * result.integral);
  return result;
}

int wilson_sign_predicted(const RealPairModel& model, std::span<const Point2> enclosed) {
  int sign = 1;
  for (const Point2& p : enclosed) {
    const auto [hx, hy, gx, gy] = model.gradient(p.x, p.y);
    const double det = gy * hx - hy * gx;
    const double scale = std::max({std::abs(hx), std::abs(hy), std::abs(gx), std::abs(gy)});
    if (!(std::abs(det) > 1e-12 * std::max(scale * scale, 1e-300))) {
      std::ostringstream msg;
      msg << "degenerate CI at (" << p.x << ", " << p.y << "): g_y h_x - h_y g_x = " << det;
      fail(ErrorKind::DegenerateCI, msg.str());
    }
    // exp(i pi sgn(det)) = -1 for either sign.
    sign = -sign;
  }
  return sign;
}

CISearchResult find_cis(const RealPairModel& model, const Region& region,
                        int grid_resolution) {
  if (grid_resolution < 2 || !(region.x_max > region.x_min) || !(region.y_max > region.y_min))
    fail(ErrorKind::ContractViolation, "find_cis needs a bounded region and resolution >= 2");
  const int n = grid_resolution;
  const double hx = (region.x_max - region.x_min) / n;
  const double hy = (region.y_max - region.y_min) / n;
  std::vector<double> hv((n + 1) * (n + 1)), gv((n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = region.x_min + i * hx, y = region.y_min + j * hy;
      hv[i * (n + 1) + j] = model.h(x, y);
      gv[i * (n + 1) + j] = model.g(x, y);
    }

  auto mixed = [&](const std::vector<double>& v, int i, int j) {
    const double c[4] = {v[i * (n + 1) + j], v[(i + 1) * (n + 1) + j],
                         v[i * (n + 1) + j + 1], v[(i + 1) * (n + 1) + j + 1]};
    bool pos = false, neg = false;
    for (double x : c) {
      if (x >= 0.0) pos = true;
      if (x <= 0.0) neg = true;
    }
    return pos && neg;
  };

  CISearchResult out;
  auto add_unique = [](std::vector<Point2>& list, Point2 p) {
    for (const Point2& q : list)
      if (std::hypot(p.x - q.x, p.y - q.y) < 1e-8) return;
    list.push_back(p);
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!mixed(hv, i, j) || !mixed(gv, i, j)) continue;
      double x = region.x_min + (i + 0.5) * hx;
      double y = region.y_min + (j + 0.5) * hy;
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const double h = model.h(x, y), g = model.g(x, y);
        if (std::abs(h) + std::abs(g) < 1e-12) {
          ok = true;
          break;
        }
        const auto [dhx, dhy, dgx, dgy] = model.gradient(x, y);
        const double det = dhx * dgy - dhy * dgx;
        if (det == 0.0 || !std::isfinite(det)) break;
        x -= (dgy * h - dhy * g) / det;
        y -= (-dgx * h + dhx * g) / det;
        if (!std::isfinite(x) || !std::isfinite(y)) break;
      }
      // Newton may wander to a zero outside the cell; keep any zero that lies
      // inside the region and let the dedupe merge repeats.
      const bool inside = x >= region.x_min && x <= region.x_max && y >= region.y_min &&
                          y <= region.y_max;
      if (ok && inside)
        add_unique(out.points, {x, y});
      else if (!ok)
        add_unique(out.unresolved,
                   {region.x_min + (i + 0.5) * hx, region.y_min + (j + 0.5) * hy});
    }
  std::sort(out.points.begin(), out.points.end(), [](Point2 a, Point2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return out;
}

double curvature_check(const AbelianField& a, const Region& region, int n_samples,
                       std::span<const Point2> cis, double exclusion_radius,
                       double fd_step) {
  if (n_samples < 1) fail(ErrorKind::ContractViolation, "curvature_check needs samples");
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i)
    for (int j = 0; j < n_samples; ++j) {
      const double x = region.x_min + (i + 0.5) * (region.x_max - region.x_min) / n_samples;
      const double y = region.y_min + (j + 0.5) * (region.y_max - region.y_min) / n_samples;
      bool skip = false;
      for (const Point2& c : cis)
        if (std::hypot(x - c.x, y - c.y) < exclusion_radius) skip = true;
      if (skip) continue;
      const double day_dx = (a(x + fd_step, y)[1] - a(x - fd_step, y)[1]) / (2.0 * fd_step);
      const double dax_dy = (a(x, y + fd_step)[0] - a(x, y - fd_step)[0]) / (2.0 * fd_step);
      worst = std::max(worst, std::abs(day_dx - dax_dy));
    }
  return worst;
}

}  // namespace ciscat
