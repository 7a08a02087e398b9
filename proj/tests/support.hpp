#pragma once

#include <complex>
#include <random>

#include "doctest.h"
#include "error.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace testing

// Runs `expr` and checks it raises ciscat::Error of the given kind.
#define CHECK_FAILS_WITH(expr, error_kind)                       \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const ciscat::Error& e_) {                          \
      thrown_ = true;                                            \
      CHECK_MESSAGE(e_.kind() == (error_kind), e_.what());       \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected ciscat::Error from " #expr); \
  } while (0)
