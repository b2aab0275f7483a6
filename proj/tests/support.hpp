#pragma once

#include <cmath>
#include <cstdint>

#include <gtest/gtest.h>

#include "qberry/numerics.hpp"
#include "qberry/random.hpp"
#include "qberry/states.hpp"

namespace qberry::testing {

/// Fixed seeds for the hand-rolled property tests; every case gets its own stream.
inline Rng stream(std::uint64_t test_id) { return Rng(derive_seed(0x51b3a7c9d2e4f601ull, test_id)); }

inline CMat3 mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMat3 m;
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const Complex& z : row) m(r, c++) = z;
    ++r;
  }
  return m;
}

inline ::testing::AssertionResult RayEqual(const QutritState& a, const QutritState& b, double tol) {
  const double d = std::abs(std::abs(overlap(a, b)) - 1.0);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "1 - |<a|b>| = " << d;
}

/// Distance between phases on the circle.
inline double phase_gap(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

}  // namespace qberry::testing
