#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <span>
#include <vector>

#include "igeo/measure.hpp"
#include "igeo/random.hpp"

namespace igeo::testing {

// Two points of weight 1/2 each, the setting of most hand-computed values.
inline FiniteSpace half_half() { return FiniteSpace({0.5, 0.5}); }

inline Density density2(double a, double b) { return Density(half_half(), {a, b}); }

inline RandomVariable rv(const Density& p, std::vector<double> v) {
  return RandomVariable(p.space(), std::move(v));
}

inline FiberElement fiber(const Density& p, std::vector<double> v, FiberKind kind) {
  return FiberElement(p, RandomVariable(p.space(), std::move(v)), kind);
}

inline double linf(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

inline void expect_near(std::span<const double> a, std::span<const double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE(linf(a, b), tol);
}

inline void expect_near(std::span<const double> a, std::vector<double> b, double tol) {
  expect_near(a, std::span<const double>(b), tol);
}

}  // namespace igeo::testing
