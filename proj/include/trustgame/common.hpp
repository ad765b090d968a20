#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace trustgame {

using PlayerId = int;

// Comparison tolerance used throughout: relative at 1e-9 with an absolute
// floor of the same magnitude. Coalition values are small sums of products
// of weights in [0,1], so this is far below any meaningful resolution.
inline constexpr double kTol = 1e-9;

// Selects between the two value operators in code paths that differ only
// in the per-rank divisor (t vs 2^(t-1)).
enum class ValueKind { shapley, banzhaf };

inline bool approx_equal(double a, double b, double tol = kTol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

// a >= b up to the scaled tolerance (one-sided).
inline bool approx_ge(double a, double b, double tol = kTol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return a >= b - tol * scale;
}

}  // namespace trustgame
