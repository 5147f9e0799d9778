#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "rrsyt/bigint.hpp"
#include "rrsyt/restrict.hpp"
#include "rrsyt/sequence.hpp"

namespace rrsyt {

inline constexpr const char* kEngineVersion = "1";

/// Number of standard Young tableaux of `shape` with no run in row i whose
/// length lies in restrictions[i]. The empty shape counts once.
BigInt count_restricted(const Shape& shape, std::span<const RunSet> restrictions);

/// Same count reduced modulo `arithmetic.prime()`; exact arithmetic is
/// rejected here, use the BigInt overload.
std::uint64_t count_restricted_mod(const Shape& shape, std::span<const RunSet> restrictions,
                                   const Arithmetic& arithmetic);

struct DiagonalOptions {
  std::uint64_t memory_budget = std::uint64_t{4} << 30;
  /// Invoked once per completed diagonal term, in increasing n.
  std::function<void(std::int64_t n, const std::string& value)> on_term;
};

/// [g(n,...,n)] for n = 0..n_max in a single sweep, offset 0.
TermSequence diagonal_sequence(const Problem& problem, int n_max, const DiagonalOptions& options = {});

/// Young–Frobenius product formula for unrestricted tableaux of `shape`.
BigInt young_frobenius(const Shape& shape);

/// Unrestricted count for the k x n rectangle from the factorial closed form.
BigInt rect_closed_form(int k, int n);

inline constexpr int kBruteForceMaxCells = 14;

/// Enumerates every tableau word of `shape` and counts those satisfying the
/// restrictions. Throws SizeError above kBruteForceMaxCells cells.
BigInt brute_force_count(const Shape& shape, std::span<const RunSet> restrictions);

}  // namespace rrsyt
