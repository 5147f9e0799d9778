#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrsyt/sequence.hpp"

namespace rrsyt {

/// Rows of a Richardson table: for each base index n, the estimates at
/// depths 0..accel_order built from the points n, n+1, ..., n+depth.
struct ExtrapolationTable {
  std::string name;
  std::vector<std::int64_t> n;
  std::vector<std::vector<double>> depth;  // depth[row][m]
};

/// Fitted parameters of a(n) ~ C * mu^n * n^theta.
struct GrowthEstimate {
  double mu = 0;
  double theta = 0;
  double c = 0;
  std::size_t n_used = 0;
  int accel_order = 4;
  // Spread (max - min) of the deepest estimates over the last rows.
  double mu_spread = 0;
  double theta_spread = 0;
  double c_spread = 0;
  std::vector<ExtrapolationTable> tables;
};

inline constexpr std::size_t kMinGrowthTerms = 50;
inline constexpr std::size_t kStabilityWindow = 5;

/// Richardson-accelerated estimates of mu (from ratios a(n+1)/a(n)), theta
/// (from n(r(n)/mu - 1)) and C (from a(n)/(mu^n n^theta)). Logarithms and
/// tables are carried in 80-digit floating point; Richardson on consecutive
/// points amplifies rounding by roughly n^depth. The usable window starts
/// after the last nonpositive term; it must hold at least kMinGrowthTerms
/// terms.
GrowthEstimate estimate_growth(const TermSequence& seq, int accel_order = 4);

/// Richardson extrapolation of s(n) = s + c1/n + ... from consecutive
/// points n0, n0+1, ..., n0+depth. Exposed for tests.
double richardson(const std::vector<double>& values, std::int64_t n0, int depth);

/// Formats `value` keeping only the digits its spread supports.
std::string format_estimate(double value, double spread);

struct NamedConstant {
  std::string name;
  double value = 0;
};

struct ConstantMatch {
  NamedConstant best;
  double residual = 0;
};

/// Integers 1..30 and surds a + b*sqrt(2), a + b*sqrt(3) with |a|, |b| <= 10.
std::vector<NamedConstant> default_base_candidates();
/// Rationals p/q with q <= max_denominator and |p/q| <= 10.
std::vector<NamedConstant> default_exponent_candidates(int max_denominator = 4);

/// Closest candidate to `value`. Advisory only. Throws InvalidInput when the
/// candidate list is empty.
ConstantMatch match_constant(double value, const std::vector<NamedConstant>& candidates);

}  // namespace rrsyt
