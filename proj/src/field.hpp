#pragma once

#include <cstddef>
#include <cstdlib>
#include <iosfwd>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mat2.hpp"

namespace ciscat {

// 64-byte aligned storage so the same FFTW plan is valid for every field.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t alignment = 64;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    std::size_t bytes = (n * sizeof(T) + alignment - 1) / alignment * alignment;
    if (bytes == 0) bytes = alignment;
    void* p = std::aligned_alloc(alignment, bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexArray = std::vector<cplx, AlignedAllocator<cplx>>;

/// Uniform cell-centred grid over [xi_min, xi_max) x [eta_min, eta_max).
///
/// Node (i, j) sits at (xi_min + (i + 1/2) h_xi, eta_min + (j + 1/2) h_eta),
/// so a conical intersection placed on a cell corner never lands on a node.
/// Storage order is xi-outer / eta-inner: index = i * n_eta + j.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int n_xi, int n_eta, double xi_min, double xi_max, double eta_min,
         double eta_max);

  int n_xi() const { return n_xi_; }
  int n_eta() const { return n_eta_; }
  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_max_; }
  double eta_min() const { return eta_min_; }
  double eta_max() const { return eta_max_; }

  double h_xi() const { return (xi_max_ - xi_min_) / n_xi_; }
  double h_eta() const { return (eta_max_ - eta_min_) / n_eta_; }
  double cell_area() const { return h_xi() * h_eta(); }
  std::size_t size() const {
    return static_cast<std::size_t>(n_xi_) * static_cast<std::size_t>(n_eta_);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_eta_) +
           static_cast<std::size_t>(j);
  }

  double xi(int i) const { return xi_min_ + (i + 0.5) * h_xi(); }
  double eta(int j) const { return eta_min_ + (j + 0.5) * h_eta(); }

  // Angular wavenumber of FFT bin i in standard FFT order.
  double k_xi(int i) const;
  double k_eta(int j) const;

  bool operator==(const Grid2D&) const = default;

 private:
  int n_xi_ = 0;
  int n_eta_ = 0;
  double xi_min_ = 0.0;
  double xi_max_ = 0.0;
  double eta_min_ = 0.0;
  double eta_max_ = 0.0;
};

/// Two diabatic (or adiabatic) amplitudes on a grid at dimensionless time tau.
struct SpinorField {
  Grid2D grid;
  ComplexArray g1;
  ComplexArray g2;
  double tau = 0.0;

  SpinorField() = default;
  explicit SpinorField(const Grid2D& g, double tau0 = 0.0)
      : grid(g), g1(g.size(), cplx{}), g2(g.size(), cplx{}), tau(tau0) {}

  Vec2 at(std::size_t n) const { return {g1[n], g2[n]}; }
  void set(std::size_t n, const Vec2& v) {
    g1[n] = v.c1;
    g2[n] = v.c2;
  }
};

/// Complex scalar on a grid; used for analysis of a single channel.
struct ScalarField {
  Grid2D grid;
  ComplexArray values;

  ScalarField() = default;
  explicit ScalarField(const Grid2D& g) : grid(g), values(g.size(), cplx{}) {}

  cplx operator()(int i, int j) const { return values[grid.index(i, j)]; }
  cplx& operator()(int i, int j) { return values[grid.index(i, j)]; }
};

/// One 2x2 unitary per grid node, same ordering as the field.
using UnitaryField = std::vector<Mat2>;

void validate(const SpinorField& field);

/// Total probability sum (|g1|^2 + |g2|^2) * cell area.
double norm(const SpinorField& field);

/// Per-channel probabilities (channel 1, channel 2).
std::pair<double, double> channel_norms(const SpinorField& field);

/// Channel probabilities after mapping each node by frames[n]^dagger; with
/// frames = eigenvector columns (excited, ground) this yields
/// (p_excited, p_ground).
std::pair<double, double> populations_in_frame(const SpinorField& field,
                                               const UnitaryField& frames);

/// G = U F applied nodewise.
SpinorField to_diabatic(const SpinorField& adiabatic, const UnitaryField& frames);
/// F = U^dagger G applied nodewise.
SpinorField to_adiabatic(const SpinorField& diabatic, const UnitaryField& frames);

/// Forward then inverse unitary DFT of both components.
SpinorField spectral_roundtrip(const SpinorField& field);

ScalarField channel(const SpinorField& field, int which);

// CISCAT-FIELD v1 dumps.
enum class FieldEncoding { Binary, Ascii };

void write_field(const std::string& path, const SpinorField& field,
                 FieldEncoding encoding = FieldEncoding::Binary);
void write_field(std::ostream& out, const SpinorField& field,
                 FieldEncoding encoding = FieldEncoding::Binary);
SpinorField read_field(const std::string& path);
SpinorField read_field(std::istream& in);

}  // namespace ciscat
