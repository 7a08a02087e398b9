#pragma once

#include <memory>

#include "field.hpp"

namespace ciscat {

// Unitary 2D DFT over a Grid2D, backed by FFTW. Both directions are scaled by
// 1/sqrt(N) so Parseval holds without extra factors. Plans are built with
// FFTW_ESTIMATE so the transform (and every dump derived from it) is
// bit-reproducible between runs.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid2D& grid);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const Grid2D& grid() const { return grid_; }

  // In place; data must hold grid.size() values and be 64-byte aligned.
  void forward(ComplexArray& data) const;
  void inverse(ComplexArray& data) const;

  // Raw FFTW transforms without the 1/sqrt(N) factor; a forward/inverse pair
  // multiplies by N. The propagator folds 1/N into its kinetic factors.
  void forward_unscaled(ComplexArray& data) const;
  void inverse_unscaled(ComplexArray& data) const;

  // Unscaled transform that leaves the spectrum transposed (eta-outer,
  // xi-inner: index j * n_xi + i). Built from contiguous 1D transforms and a
  // blocked transpose, which is markedly faster than the 2D plan FFTW picks
  // under FFTW_ESTIMATE. The buffer is swapped with an internal scratch, so
  // one instance must not be used from two threads at once.
  void forward_transposed(ComplexArray& data) const;
  void inverse_transposed(ComplexArray& data) const;

 private:
  struct Plans;
  Grid2D grid_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace ciscat
