#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rrsyt/bigint.hpp"
#include "rrsyt/restrict.hpp"
#include "rrsyt/sequence.hpp"

namespace rrsyt {

using Exponent = std::vector<int>;

/// Multivariate power series in k variables truncated at total degree
/// `degree_cap`. Absent exponents are zero; zero coefficients are not stored.
class TruncatedSeries {
 public:
  TruncatedSeries(int variables, int degree_cap);

  static TruncatedSeries one(int variables, int degree_cap);
  /// Sum over allowed run lengths r >= 1 of x_axis^r, i.e. x/(1-x) minus the
  /// forbidden powers, truncated at the cap. `axis` is 0-based.
  static TruncatedSeries allowed_runs(int variables, int degree_cap, int axis,
                                      const RunSet& forbidden);
  /// Expansion of 1/(1 - x_1 - ... - x_k).
  static TruncatedSeries geometric_all(int variables, int degree_cap);

  int variables() const { return variables_; }
  int degree_cap() const { return degree_cap_; }
  const std::map<Exponent, BigInt>& terms() const { return terms_; }

  BigInt coefficient(const Exponent& e) const;
  /// Drops the entry when `value` is zero; ignores exponents above the cap.
  void set(const Exponent& e, BigInt value);

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Same series with a smaller cap.
  TruncatedSeries truncated(int degree_cap) const;

  /// One "e1 ... ek : coefficient" line per stored term, sorted.
  std::string dump() const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void check_compatible(const TruncatedSeries& other) const;

  int variables_;
  int degree_cap_;
  std::map<Exponent, BigInt> terms_;
};

/// Number of words with endpoint[i] copies of letter i+1 and no run of letter
/// i+1 whose length lies in restrictions[i].
BigInt free_walk_count(std::span<const int> endpoint, std::span<const RunSet> restrictions);
std::uint64_t free_walk_count_mod(std::span<const int> endpoint,
                                  std::span<const RunSet> restrictions,
                                  const Arithmetic& arithmetic);

/// Generating function F = 1 + sum F_i of run-restricted words, solving
/// F_i = U_i (1 + sum_{j != i} F_j) by fixed-point iteration in the truncated
/// ring, where U_i is the allowed-run series of axis i.
TruncatedSeries solve_restricted_system(int k, std::span<const RunSet> restrictions,
                                        int degree_cap);

/// Coefficients of (x_1 ... x_k)^n for n = 0..m. Throws TruncationError when
/// m * k exceeds the cap.
TermSequence series_diagonal(const TruncatedSeries& series, int m);

}  // namespace rrsyt
