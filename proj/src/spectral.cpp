#include "spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "error.hpp"

namespace ciscat {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Out-of-place blocked transpose of an rows x cols matrix.
void transpose(const cplx* in, cplx* out, int rows, int cols) {
  constexpr int B = 32;
  for (int ib = 0; ib < rows; ib += B)
    for (int jb = 0; jb < cols; jb += B) {
      const int ie = std::min(ib + B, rows), je = std::min(jb + B, cols);
      for (int i = ib; i < ie; ++i)
        for (int j = jb; j < je; ++j) out[static_cast<std::size_t>(j) * rows + i] =
            in[static_cast<std::size_t>(i) * cols + j];
    }
}

}  // namespace

struct SpectralTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  // Batched 1D transforms along eta (rows of length n_eta) and along xi
  // (rows of length n_xi, in the transposed layout).
  fftw_plan eta_forward = nullptr;
  fftw_plan xi_forward = nullptr;
  fftw_plan eta_backward = nullptr;
  fftw_plan xi_backward = nullptr;
  double scale = 1.0;
  mutable ComplexArray scratch;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (fftw_plan p : {forward, backward, eta_forward, xi_forward, eta_backward, xi_backward})
      if (p) fftw_destroy_plan(p);
  }
};

namespace {

fftw_plan batched(int length, int count, fftw_complex* p, int sign) {
  int n[1] = {length};
  return fftw_plan_many_dft(1, n, count, p, nullptr, 1, length, p, nullptr, 1, length, sign,
                            FFTW_ESTIMATE);
}

}  // namespace

SpectralTransform::SpectralTransform(const Grid2D& grid)
    : grid_(grid), plans_(std::make_unique<Plans>()) {
  ComplexArray scratch(grid.size());
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_2d(grid.n_xi(), grid.n_eta(), p, p, FFTW_FORWARD,
                                     FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_2d(grid.n_xi(), grid.n_eta(), p, p,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
  const int nx = grid.n_xi(), ny = grid.n_eta();
  plans_->eta_forward = batched(ny, nx, p, FFTW_FORWARD);
  plans_->eta_backward = batched(ny, nx, p, FFTW_BACKWARD);
  plans_->xi_forward = batched(nx, ny, p, FFTW_FORWARD);
  plans_->xi_backward = batched(nx, ny, p, FFTW_BACKWARD);
  if (!plans_->forward || !plans_->backward || !plans_->eta_forward || !plans_->eta_backward ||
      !plans_->xi_forward || !plans_->xi_backward)
    fail(ErrorKind::Numerical, "FFTW failed to create a plan");
  plans_->scratch.assign(grid.size(), cplx{});
  plans_->scale = 1.0 / std::sqrt(static_cast<double>(grid.size()));
}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

void SpectralTransform::forward(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->forward, p, p);
  for (auto& v : data) v *= plans_->scale;
}

void SpectralTransform::inverse(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->backward, p, p);
  for (auto& v : data) v *= plans_->scale;
}

void SpectralTransform::forward_unscaled(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->forward, p, p);
}

void SpectralTransform::inverse_unscaled(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->backward, p, p);
}

void SpectralTransform::forward_transposed(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  const int nx = grid_.n_xi(), ny = grid_.n_eta();
  ComplexArray& tmp = plans_->scratch;
  fftw_execute_dft(plans_->eta_forward, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
  transpose(data.data(), tmp.data(), nx, ny);
  fftw_execute_dft(plans_->xi_forward, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(tmp.data()));
  data.swap(tmp);
}

void SpectralTransform::inverse_transposed(ComplexArray& data) const {
  if (data.size() != grid_.size())
    fail(ErrorKind::ContractViolation, "spectral transform size mismatch");
  const int nx = grid_.n_xi(), ny = grid_.n_eta();
  ComplexArray& tmp = plans_->scratch;
  fftw_execute_dft(plans_->xi_backward, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
  transpose(data.data(), tmp.data(), ny, nx);
  fftw_execute_dft(plans_->eta_backward, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(tmp.data()));
  data.swap(tmp);
}

}  // namespace ciscat
