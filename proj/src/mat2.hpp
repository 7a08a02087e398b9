#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace ciscat {

using cplx = std::complex<double>;

// Small dense 2x2 complex matrix, row-major.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }
  static Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  Mat2 adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  cplx trace() const { return a11 + a22; }

  Mat2& operator+=(const Mat2& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2& operator*=(cplx s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

struct Vec2 {
  cplx c1{}, c2{};
};

inline Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a.a11 * v.c1 + a.a12 * v.c2, a.a21 * v.c1 + a.a22 * v.c2};
}

// Largest absolute entry of a - b.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  const Mat2 d = a - b;
  return std::max({std::abs(d.a11), std::abs(d.a12), std::abs(d.a21),
                   std::abs(d.a22)});
}

inline double unitarity_defect(const Mat2& u) {
  return max_abs_diff(u.adjoint() * u, Mat2::identity());
}

}  // namespace ciscat
