#include "models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace ciscat {

namespace {

using namespace std::complex_literals;

double heaviside(double v) {
  if (v > 0.0) return 1.0;
  if (v < 0.0) return 0.0;
  return 0.5;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Free: return "free";
    case ModelKind::LinearJT: return "linear_jt";
    case ModelKind::CappedJT: return "capped_jt";
    case ModelKind::TwistedCappedJT: return "twisted_capped_jt";
    case ModelKind::TwoCI: return "two_ci";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  for (ModelKind k : {ModelKind::Free, ModelKind::LinearJT, ModelKind::CappedJT,
                      ModelKind::TwistedCappedJT, ModelKind::TwoCI})
    if (name == to_string(k)) return k;
  fail(ErrorKind::Config, "unknown model '" + name + "'");
}

double barrier_value(const BarrierSpec& spec, double x, double y) {
  if (!spec.enabled) return 0.0;
  const double s = std::hypot(x, y) / spec.radius;
  const double s2 = s * s;
  const double s4 = s2 * s2;
  return spec.height * std::exp(-(s4 * s4));
}

double xi_factor(double rho, double rho0, double delta) {
  if (rho < 0.0 || rho0 < 0.0) fail(ErrorKind::Domain, "xi_factor needs rho, rho0 >= 0");
  if (rho0 == 0.0) {
    if (rho == 0.0) fail(ErrorKind::Domain, "xi_factor undefined for rho = rho0 = 0");
    return delta / rho;
  }
  const double outer = heaviside(rho - rho0);
  const double inner = heaviside(rho0 - rho);
  double value = inner * delta / rho0;
  if (outer > 0.0) value += outer * delta / rho;
  return value;
}

std::array<double, 4> RealPairModel::gradient(double x, double y, double step) const {
  if (jacobian) return jacobian(x, y);
  const double inv = 0.5 / step;
  return {(h(x + step, y) - h(x - step, y)) * inv, (h(x, y + step) - h(x, y - step)) * inv,
          (g(x + step, y) - g(x - step, y)) * inv, (g(x, y + step) - g(x, y - step)) * inv};
}

TwoStatePotential::TwoStatePotential(ModelKind kind, ModelParams params)
    : kind_(kind), params_(params) {
  if (!(params_.delta >= 0.0) || !std::isfinite(params_.delta))
    fail(ErrorKind::Config, "model delta must be finite and >= 0");
  if ((kind_ == ModelKind::CappedJT || kind_ == ModelKind::TwistedCappedJT) &&
      !(params_.rho0 > 0.0))
    fail(ErrorKind::Config, "capped models need rho0 > 0");
  if (kind_ == ModelKind::TwoCI && (!(params_.rho0 >= 0.0) || params_.x0 == 0.0))
    fail(ErrorKind::Config, "two_ci needs rho0 >= 0 and x0 != 0");
  if (params_.barrier.enabled && !(params_.barrier.radius > 0.0))
    fail(ErrorKind::Config, "barrier radius must be > 0");
}

double TwoStatePotential::raw_h(double x, double y) const {
  (void)y;
  switch (kind_) {
    case ModelKind::Free: return 0.0;
    case ModelKind::TwoCI: return x * (params_.x0 - x);
    default: return x;
  }
}

double TwoStatePotential::raw_g(double x, double y) const {
  (void)x;
  return kind_ == ModelKind::Free ? 0.0 : y;
}

double TwoStatePotential::scale(double x, double y) const {
  switch (kind_) {
    case ModelKind::CappedJT:
    case ModelKind::TwistedCappedJT:
      return xi_factor(std::hypot(x, y), params_.rho0, params_.delta);
    case ModelKind::TwoCI: {
      if (params_.rho0 == 0.0) return 1.0;
      return xi_factor(std::hypot(raw_h(x, y), raw_g(x, y)), params_.rho0, params_.delta);
    }
    default:
      return 1.0;
  }
}

double TwoStatePotential::h(double x, double y) const { return scale(x, y) * raw_h(x, y); }

cplx TwoStatePotential::c(double x, double y) const {
  const double g = scale(x, y) * raw_g(x, y);
  if (kind_ == ModelKind::TwistedCappedJT) return g * std::exp(-1i * std::atan2(y, x));
  return g;
}

double TwoStatePotential::scalar(double x, double y) const {
  return barrier_value(params_.barrier, x, y);
}

Mat2 TwoStatePotential::matrix(double x, double y) const {
  const double hv = h(x, y);
  const cplx cv = c(x, y);
  return {hv, cv, std::conj(cv), -hv};
}

std::pair<double, double> TwoStatePotential::eigenvalues(double x, double y) const {
  const double e = std::hypot(h(x, y), std::abs(c(x, y)));
  return {-e, e};
}

Mat2 TwoStatePotential::frame(double x, double y) const {
  if (kind_ == ModelKind::Free) return Mat2::identity();
  const double hr = raw_h(x, y);
  const double gr = raw_g(x, y);
  if (hr == 0.0 && gr == 0.0) {
    std::ostringstream msg;
    msg << "eigenbasis undefined at conical intersection (" << x << ", " << y << ")";
    fail(ErrorKind::SingularBasis, msg.str());
  }
  switch (kind_) {
    case ModelKind::LinearJT:
    case ModelKind::CappedJT:
      return u_c(std::atan2(y, x));
    case ModelKind::TwistedCappedJT:
      return u_d(std::atan2(y, x));
    default:
      return u_general(hr, gr);
  }
}

RealPairModel TwoStatePotential::real_pair() const {
  RealPairModel m;
  switch (kind_) {
    case ModelKind::LinearJT:
    case ModelKind::CappedJT:
      m.h = [](double x, double) { return x; };
      m.g = [](double, double y) { return y; };
      m.jacobian = [](double, double) { return std::array<double, 4>{1.0, 0.0, 0.0, 1.0}; };
      return m;
    case ModelKind::TwoCI: {
      const double x0 = params_.x0;
      m.h = [x0](double x, double) { return x * (x0 - x); };
      m.g = [](double, double y) { return y; };
      m.jacobian = [x0](double x, double) {
        return std::array<double, 4>{x0 - 2.0 * x, 0.0, 0.0, 1.0};
      };
      return m;
    }
    default:
      fail(ErrorKind::ContractViolation,
           std::string("model ") + to_string(kind_) + " has no real (h, g) representation");
  }
}

Mat2 u_c(double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const cplx ep = std::exp(0.5i * phi);
  const cplx em = std::conj(ep);
  return {ep * c, -em * s, ep * s, em * c};
}

Mat2 u_lhh(double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return {c, -s, s, c};
}

Mat2 u_d(double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const double sp = std::sin(phi);
  return {std::exp(1i * (0.5 * sp - 0.5 * phi)) * c,
          -std::exp(1i * (-0.5 * phi - 0.5 * sp)) * s,
          std::exp(1i * (0.5 * phi + 0.5 * sp)) * s,
          std::exp(1i * (-0.5 * sp + 0.5 * phi)) * c};
}

Mat2 u_general(double h, double g) {
  if (h == 0.0 && g == 0.0)
    fail(ErrorKind::SingularBasis, "u_general undefined at h = g = 0 (conical intersection)");
  const double s = std::hypot(h, g);
  const double inv = 0.5 / s;
  return Mat2{cplx(h + s, g), cplx(-g, -(h - s)), cplx(g, -h + s), cplx(h + s, -g)} * inv;
}

UnitaryField frame_field(const TwoStatePotential& model, const Grid2D& grid) {
  UnitaryField frames(grid.size());
  for (int i = 0; i < grid.n_xi(); ++i)
    for (int j = 0; j < grid.n_eta(); ++j)
      frames[grid.index(i, j)] = model.frame(grid.xi(i), grid.eta(j));
  return frames;
}

std::pair<double, double> adiabatic_populations(const SpinorField& field,
                                                const TwoStatePotential& model) {
  const auto [excited, ground] = populations_in_frame(field, frame_field(model, field.grid));
  return {ground, excited};
}

}  // namespace ciscat
