#include "topo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ciscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap(double d) {
  // to (-pi, pi]
  d = std::remainder(d, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  return d;
}

double half_integer_residual(double c) { return std::abs(c - 0.5 * std::round(2.0 * c)); }

// Net phase change / 2 pi for one sampling density.
double loop_charge(const ComplexFunction& psi, const LoopPath& loop, int n, bool open,
                   double gap, double eps_amp, double* raw) {
  std::vector<double> t(n), phase(n), amp(n);
  double peak = 0.0;
  for (int j = 0; j < n; ++j) {
    t[j] = open ? gap + (1.0 - 2.0 * gap) * (j + 0.5) / n : static_cast<double>(j) / n;
    const Point2 p = loop.point(t[j]);
    const cplx v = psi(p.x, p.y);
    amp[j] = std::abs(v);
    phase[j] = std::arg(v);
    peak = std::max(peak, amp[j]);
  }
  if (!(peak > 0.0)) fail(ErrorKind::NodalCrossing, "field vanishes on the whole loop");
  const double floor_amp = eps_amp * peak;
  int first = 0, last = n - 1;
  if (open) {
    while (first < n && amp[first] < floor_amp) ++first;
    while (last >= 0 && amp[last] < floor_amp) --last;
    if (last - first < 2) fail(ErrorKind::NodalCrossing, "open loop has no usable samples");
  }
  for (int j = first; j <= last; ++j) {
    if (amp[j] < floor_amp) {
      const Point2 p = loop.point(t[j]);
      std::ostringstream msg;
      msg << "loop crosses a near-zero of the field at (" << p.x << ", " << p.y
          << "), |psi| = " << amp[j] << " < " << floor_amp;
      fail(ErrorKind::NodalCrossing, msg.str());
    }
  }
  double total = 0.0;
  for (int j = first; j < last; ++j) total += wrap(phase[j + 1] - phase[j]);
  if (!open) {
    total += wrap(phase[0] - phase[n - 1]);
    *raw = total / kTwoPi;
    return *raw;
  }
  *raw = total / kTwoPi;
  // Extrapolate the unwrapped phase linearly out to t = 0 and t = 1.
  const double slope_lo = wrap(phase[first + 1] - phase[first]) / (t[first + 1] - t[first]);
  const double slope_hi = wrap(phase[last] - phase[last - 1]) / (t[last] - t[last - 1]);
  total += slope_lo * t[first] + slope_hi * (1.0 - t[last]);
  return total / kTwoPi;
}

}  // namespace

PhaseLoopResult topological_charge(const ComplexFunction& psi, const LoopPath& loop,
                                   const LoopOptions& options) {
  if (options.min_samples < 8 || options.max_samples < options.min_samples)
    fail(ErrorKind::Domain, "topological_charge: bad sample limits");
  int n = options.min_samples;
  double raw = 0.0;
  double prev = loop_charge(psi, loop, n, options.open, options.open_gap, options.eps_amp, &raw);
  PhaseLoopResult result;
  while (true) {
    const int next_n = 2 * n;
    if (next_n > options.max_samples) {
      result.charge = prev;
      result.winding = raw;
      result.samples = n;
      result.converged = false;
      break;
    }
    double raw_next = 0.0;
    const double cur = loop_charge(psi, loop, next_n, options.open, options.open_gap,
                                   options.eps_amp, &raw_next);
    n = next_n;
    raw = raw_next;
    if (std::abs(cur - prev) < options.tolerance) {
      result.charge = cur;
      result.winding = raw;
      result.samples = n;
      result.converged = true;
      break;
    }
    prev = cur;
  }
  result.residual = half_integer_residual(result.charge);
  result.converged = result.converged && result.residual < 0.05;
  return result;
}

ComplexFunction interpolate(const ScalarField& psi) {
  return [&psi](double x, double y) -> cplx {
    const Grid2D& g = psi.grid;
    const double fx = (x - g.xi_min()) / g.h_xi() - 0.5;
    const double fy = (y - g.eta_min()) / g.h_eta() - 0.5;
    if (!(fx >= 0.0 && fy >= 0.0 && fx <= g.n_xi() - 1 && fy <= g.n_eta() - 1)) {
      std::ostringstream msg;
      msg << "point (" << x << ", " << y << ") lies outside the sampled field";
      fail(ErrorKind::Domain, msg.str());
    }
    const int i = std::min(static_cast<int>(fx), g.n_xi() - 2);
    const int j = std::min(static_cast<int>(fy), g.n_eta() - 2);
    const double u = fx - i, v = fy - j;
    return (1.0 - u) * (1.0 - v) * psi(i, j) + u * (1.0 - v) * psi(i + 1, j) +
           (1.0 - u) * v * psi(i, j + 1) + u * v * psi(i + 1, j + 1);
  };
}

PhaseLoopResult topological_charge(const ScalarField& psi, const LoopPath& loop,
                                   const LoopOptions& options) {
  return topological_charge(interpolate(psi), loop, options);
}

double weakest_angle(const ComplexFunction& psi, Point2 center, double radius, int samples) {
  double best = 0.0, best_amp = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double a = -kPi + kTwoPi * j / samples;
    const double v = std::abs(psi(center.x + radius * std::cos(a), center.y + radius * std::sin(a)));
    if (j == 0 || v < best_amp) {
      best_amp = v;
      best = a;
    }
  }
  return best;
}

PhaseLoopResult charge_at_point(const ComplexFunction& psi, Point2 center, double radius,
                                std::optional<double> open_angle, const LoopOptions& options) {
  if (!(radius > 0.0)) fail(ErrorKind::Domain, "charge_at_point: radius must be > 0");
  LoopOptions opts = options;
  opts.open = open_angle.has_value();
  const LoopPath loop = LoopPath::circle(center, radius, open_angle.value_or(0.0));
  return topological_charge(psi, loop, opts);
}

PhaseLoopResult charge_at_point(const ScalarField& psi, Point2 center, double radius,
                                std::optional<double> open_angle, const LoopOptions& options) {
  return charge_at_point(interpolate(psi), center, radius, open_angle, options);
}

double DislocationSegment::length() const {
  double s = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    s += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
  return s;
}

std::pair<double, double> DislocationSegment::fit_line() const {
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const Point2& p : points) {
    sx += p.x;
    sy += p.y;
    sxx += p.x * p.x;
    sxy += p.x * p.y;
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || std::abs(den) < 1e-300) return {sy / std::max(n, 1.0), 0.0};
  const double slope = (n * sxy - sx * sy) / den;
  return {(sy - slope * sx) / n, slope};
}

DislocationSet dislocation_lines(const ScalarField& psi, const DislocationOptions& options) {
  const Grid2D& g = psi.grid;
  const int nx = g.n_xi(), ny = g.n_eta();
  DislocationSet out;
  for (const cplx& v : psi.values) out.field_max = std::max(out.field_max, std::abs(v));
  if (!(out.field_max > 0.0)) return out;
  const double floor_amp = options.eps_amp * out.field_max;
  const double jump_min = kPi - options.eps_ph;

  auto jump = [](cplx a, cplx b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return std::abs(std::arg(b / a));
  };

  // Sites are cells for the single-cell test and nodes for the wide stencil.
  const bool wide = options.stencil > 1;
  const int cx = wide ? nx : nx - 1, cy = wide ? ny : ny - 1;
  const double site_off = wide ? 0.0 : 0.5;
  std::vector<char> marked(static_cast<std::size_t>(cx) * cy, 0);
  std::vector<double> cell_amp(marked.size(), 0.0), cell_jump(marked.size(), 0.0);
  if (!wide) {
    for (int i = 0; i < cx; ++i)
      for (int j = 0; j < cy; ++j) {
        const cplx v00 = psi(i, j), v10 = psi(i + 1, j), v01 = psi(i, j + 1),
                   v11 = psi(i + 1, j + 1);
        const double mean =
            0.25 * (std::abs(v00) + std::abs(v10) + std::abs(v01) + std::abs(v11));
        if (mean >= floor_amp) continue;
        // A nodal line parallel to xi flips the phase across eta edges, and
        // vice versa; both parallel edges must agree.
        const double je0 = jump(v00, v01), je1 = jump(v10, v11);
        const double jx0 = jump(v00, v10), jx1 = jump(v01, v11);
        double j_used = -1.0;
        if (je0 >= jump_min && je1 >= jump_min) j_used = 0.5 * (je0 + je1);
        else if (jx0 >= jump_min && jx1 >= jump_min) j_used = 0.5 * (jx0 + jx1);
        if (j_used < 0.0) continue;
        const std::size_t c = static_cast<std::size_t>(i) * cy + j;
        marked[c] = 1;
        cell_amp[c] = mean;
        cell_jump[c] = j_used;
        ++out.marked_cells;
      }
  } else {
    // A node is marked when it is an amplitude minimum along one grid
    // direction and, for some half-width w, the phases on either side,
    // extrapolated to the node with their own local gradients, differ by
    // about pi while the node sits well below both flanks.
    const int w_max = options.stencil;
    auto at = [&](int i, int j, int dir, int s) {
      return dir == 0 ? psi(i, j + s) : psi(i + s, j);
    };
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        const double a0 = std::abs(psi(i, j));
        for (int dir = 0; dir < 2; ++dir) {
          const int pos = dir == 0 ? j : i, len = dir == 0 ? ny : nx;
          if (pos - w_max - 1 < 0 || pos + w_max + 1 >= len) continue;
          if (a0 > std::abs(at(i, j, dir, -1)) || a0 > std::abs(at(i, j, dir, 1))) continue;
          double best = -1.0;
          for (int w = 2; w <= w_max; ++w) {
            const cplx lo = at(i, j, dir, -w), hi = at(i, j, dir, w);
            const double flank = std::min(std::abs(lo), std::abs(hi));
            if (flank < floor_amp || a0 >= options.local_amp * flank) continue;
            const double s_lo = std::arg(lo / at(i, j, dir, -w - 1));
            const double s_hi = std::arg(at(i, j, dir, w + 1) / hi);
            const double d = std::abs(wrap(std::arg(hi / lo) - w * (s_lo + s_hi)));
            if (d >= jump_min) {
              best = d;
              break;
            }
          }
          if (best < 0.0) continue;
          const std::size_t c = static_cast<std::size_t>(i) * cy + j;
          if (!marked[c]) ++out.marked_cells;
          marked[c] = 1;
          cell_amp[c] = a0;
          cell_jump[c] = std::max(cell_jump[c], best);
        }
      }
  }

  // 8-connected components in a fixed scan order.
  std::vector<int> label(marked.size(), -1);
  std::vector<std::pair<int, int>> stack;
  int next_label = 0;
  for (int i = 0; i < cx; ++i)
    for (int j = 0; j < cy; ++j) {
      const std::size_t c0 = static_cast<std::size_t>(i) * cy + j;
      if (!marked[c0] || label[c0] >= 0) continue;
      std::vector<std::pair<int, int>> cells;
      stack.assign(1, {i, j});
      label[c0] = next_label;
      while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        cells.emplace_back(a, b);
        for (int da = -1; da <= 1; ++da)
          for (int db = -1; db <= 1; ++db) {
            const int p = a + da, q = b + db;
            if (p < 0 || q < 0 || p >= cx || q >= cy) continue;
            const std::size_t c = static_cast<std::size_t>(p) * cy + q;
            if (marked[c] && label[c] < 0) {
              label[c] = next_label;
              stack.emplace_back(p, q);
            }
          }
      }
      ++next_label;
      if (static_cast<int>(cells.size()) < options.min_cells) continue;

      DislocationSegment seg;
      seg.cells = static_cast<int>(cells.size());
      double mx = 0.0, my = 0.0;
      for (const auto& [a, b] : cells) {
        const std::size_t c = static_cast<std::size_t>(a) * cy + b;
        const Point2 p{g.xi(a) + site_off * g.h_xi(), g.eta(b) + site_off * g.h_eta()};
        seg.points.push_back(p);
        seg.suppression += cell_amp[c];
        seg.phase_jump += cell_jump[c];
        mx += p.x;
        my += p.y;
      }
      seg.suppression /= seg.cells * out.field_max;
      seg.phase_jump /= seg.cells;
      mx /= seg.cells;
      my /= seg.cells;
      // Order along the principal axis of the point cloud.
      double sxx = 0, syy = 0, sxy = 0;
      for (const Point2& p : seg.points) {
        sxx += (p.x - mx) * (p.x - mx);
        syy += (p.y - my) * (p.y - my);
        sxy += (p.x - mx) * (p.y - my);
      }
      const double ang = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
      const double ux = std::cos(ang), uy = std::sin(ang);
      std::stable_sort(seg.points.begin(), seg.points.end(), [&](Point2 p, Point2 q) {
        return (p.x - mx) * ux + (p.y - my) * uy < (q.x - mx) * ux + (q.y - my) * uy;
      });
      if (seg.points.front().x > seg.points.back().x)
        std::reverse(seg.points.begin(), seg.points.end());
      out.segments.push_back(std::move(seg));
    }
  return out;
}

AxisReport axis_segment(const DislocationSet& set, double eta_axis, double xi_origin,
                        double xi_limit, double tolerance, int direction) {
  struct Piece {
    int segment;
    double lo, hi, offset;
  };
  std::vector<Piece> pieces;
  for (std::size_t s = 0; s < set.segments.size(); ++s) {
    const DislocationSegment& seg = set.segments[s];
    int near = 0;
    double lo = 0.0, hi = 0.0, offset = 0.0, y_lo = 0.0, y_hi = 0.0;
    for (const Point2& p : seg.points) {
      const double along = (p.x - xi_origin) * direction;
      if (along < 0.0 || std::abs(p.y - eta_axis) > tolerance) continue;
      const bool first = near++ == 0;
      offset = std::max(offset, std::abs(p.y - eta_axis));
      lo = first ? along : std::min(lo, along);
      hi = first ? along : std::max(hi, along);
      y_lo = first ? p.y : std::min(y_lo, p.y);
      y_hi = first ? p.y : std::max(y_hi, p.y);
    }
    if (near == 0 || near < 0.8 * seg.cells) continue;
    // Must run along the axis, not across it.
    if (hi - lo < y_hi - y_lo) continue;
    pieces.push_back({static_cast<int>(s), lo, hi, offset});
  }
  AxisReport out;
  if (pieces.empty()) return out;

  // Start from the longest piece and absorb pieces that continue it with a
  // gap no wider than the lateral tolerance: a line that steps between grid
  // rows comes out of the tracer as several pieces.
  const Piece seed = *std::max_element(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.hi - a.lo < b.hi - b.lo;
  });
  double lo = seed.lo, hi = seed.hi, offset = seed.offset;
  std::vector<char> used(pieces.size(), 0);
  int merged = 0;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const Piece& p = pieces[k];
      if (used[k] || p.lo > hi + tolerance || p.hi < lo - tolerance) continue;
      used[k] = 1;
      ++merged;
      lo = std::min(lo, p.lo);
      hi = std::max(hi, p.hi);
      offset = std::max(offset, p.offset);
      grew = true;
    }
  }
  out.found = true;
  out.segment = seed.segment;
  out.pieces = merged;
  out.xi_start = xi_origin + direction * lo;
  out.xi_end = xi_origin + direction * hi;
  out.max_offset = offset;
  const auto [c0, c1] = set.segments[seed.segment].fit_line();
  out.intercept = c0 + c1 * xi_origin;
  const double reach = std::abs(xi_limit - xi_origin);
  out.coverage = std::max(0.0, std::min(hi, reach) - lo) / reach;
  return out;
}

}  // namespace ciscat
