#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rrsyt/bigint.hpp"
#include "rrsyt/modp.hpp"
#include "rrsyt/sequence.hpp"

namespace rrsyt {

inline constexpr std::size_t kDefaultMargin = 5;

/// sum_{i=0}^{L} p_i(n) a(n+i) = 0 with coeffs[i][j] the coefficient of n^j in
/// p_i. prime() == 0 means integer coefficients, otherwise residues mod prime.
class Recurrence {
 public:
  /// Trailing zero polynomials are dropped so p_L is never identically zero.
  /// Integer recurrences are normalized to content 1 with a positive leading
  /// coefficient of p_L. Throws InvalidInput for the zero recurrence.
  explicit Recurrence(std::vector<std::vector<BigInt>> coeffs, std::uint64_t prime = 0);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree() const { return static_cast<int>(coeffs_.front().size()) - 1; }
  std::uint64_t prime() const { return prime_; }
  bool is_integer() const { return prime_ == 0; }
  const std::vector<std::vector<BigInt>>& coeffs() const { return coeffs_; }

  /// p_i(n), reduced mod prime when modular.
  BigInt poly_at(int i, const BigInt& n) const;

  /// Human-readable form, e.g. "(n + 2)*a(n+1) + (-4*n - 2)*a(n) = 0".
  std::string to_string() const;

  friend bool operator==(const Recurrence&, const Recurrence&) = default;

 private:
  std::vector<std::vector<BigInt>> coeffs_;
  std::uint64_t prime_;
};

struct VerificationReport {
  bool holds = true;
  std::optional<std::int64_t> first_failing_n;
  std::size_t windows_checked = 0;
};

/// Checks the recurrence at every n with a full window of terms. Exact
/// sequences with integer recurrences are checked exactly; anything modular
/// is checked modulo the (common) prime.
VerificationReport verify_recurrence(const Recurrence& rec, const TermSequence& seq);

/// The (N-L) x (L+1)(d+1) system over GF(p) whose kernel holds every
/// recurrence of order L and degree d satisfied by the sequence. Rows are
/// n = offset, offset+1, ...; column i*(d+1)+j holds n^j a(n+i).
modp::Matrix recurrence_system(const TermSequence& seq, int order, int degree);

/// Terms needed to guess at (order, degree): (L+1)(d+1) + L + margin.
std::size_t required_terms(int order, int degree, std::size_t margin = kDefaultMargin);

/// Basis of all recurrences of the given order and degree satisfied mod p by
/// a modular sequence, each scaled so its first nonzero coefficient is 1.
/// An empty result proves no integer recurrence of that shape exists.
std::vector<Recurrence> guess_recurrence(const TermSequence& seq, int order, int degree,
                                         std::size_t margin = kDefaultMargin,
                                         modp::PivotOrder pivot = modp::PivotOrder::natural);

struct Cell {
  int order = 0;
  int degree = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Survivor {
  Cell cell;
  Recurrence recurrence;
  VerificationReport verification;
};

struct Certificate {
  std::uint64_t prime = 0;
  std::size_t terms_used = 0;
  std::size_t margin = kDefaultMargin;
  int budget = 0;
  std::vector<Cell> ruled_out;        // sorted
  std::vector<Cell> solved;           // cells whose system was actually eliminated
  std::vector<std::pair<Cell, std::size_t>> nonempty;  // cell, nullity
  std::vector<Survivor> survivors;    // bases at minimal nonempty cells
  std::size_t unchecked = 0;          // cells within budget lacking equations
  int certified_k = -1;               // all L, d <= certified_k ruled out

  bool is_ruled_out(Cell c) const;
};

struct CertifyOptions {
  std::size_t margin = kDefaultMargin;
  unsigned threads = 1;
};

/// Rules out every (L, d) with L, d <= budget that has enough equations.
/// Emptiness at (L, d) implies emptiness at every dominated cell, so only
/// cells not implied by a larger ruled-out neighbour are eliminated.
Certificate certify_absence(const TermSequence& seq, int budget, const CertifyOptions& options = {});

/// Largest K with (K+1)^2 + K + margin <= N.
int max_certifiable_budget(std::size_t terms, std::size_t margin = kDefaultMargin);

enum class LiftStatus { lifted, no_solution, ambiguous, unlucky_prime, verification_failed };

struct LiftResult {
  LiftStatus status = LiftStatus::no_solution;
  std::optional<Recurrence> recurrence;
  std::uint64_t prime = 0;  // offending prime for unlucky_prime
  std::string message;
};

/// `count` primes starting at 45007 and increasing.
std::vector<std::uint64_t> default_primes(std::size_t count);

/// Guesses modulo each prime, aligns the one-dimensional solution spaces,
/// Chinese-remainders and rationally reconstructs the coefficients, then
/// verifies the integer recurrence on the exact sequence.
LiftResult lift_recurrence(const TermSequence& exact, int order, int degree,
                           std::span<const std::uint64_t> primes,
                           std::size_t margin = kDefaultMargin);

/// a/b with |a|, b <= sqrt(m/2) and a = b*x mod m, if one exists.
std::optional<std::pair<BigInt, BigInt>> rational_reconstruct(const BigInt& x, const BigInt& m);

}  // namespace rrsyt
