#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rrsyt {

/// A partition shape [l1 >= l2 >= ... >= lk >= 1]. The empty shape is valid.
class Shape {
 public:
  Shape() = default;
  /// Throws InvalidShape unless parts are positive and weakly decreasing.
  explicit Shape(std::vector<int> parts);

  static Shape rectangle(int rows, int columns);

  const std::vector<int>& parts() const { return parts_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  int cells() const;
  bool empty() const { return parts_.empty(); }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> parts_;
};

struct Progression {
  std::int64_t first = 1;
  std::int64_t step = 1;

  friend bool operator==(const Progression&, const Progression&) = default;
};

/// Eventually periodic membership indicator: for r < threshold membership is
/// read from `head`, for r >= threshold from `tail[r % period]`.
struct PeriodicIndicator {
  std::int64_t threshold = 1;
  std::int64_t period = 1;
  std::vector<bool> head;  // indexed by r, size threshold; head[0] unused
  std::vector<bool> tail;  // size period

  bool contains(std::int64_t r) const {
    return r < threshold ? head[static_cast<std::size_t>(r)]
                         : tail[static_cast<std::size_t>(r % period)];
  }

  friend bool operator==(const PeriodicIndicator&, const PeriodicIndicator&) = default;
};

/// A forbidden set of run-lengths: a finite set united with arithmetic
/// progressions {first + t*step : t >= 0}. Overlaps are allowed.
class RunSet {
 public:
  RunSet() : RunSet({}, {}) {}
  RunSet(std::vector<std::int64_t> finite, std::vector<Progression> progressions);

  /// {2, 4, 6, ...}: forbids every even run.
  static RunSet evens() { return RunSet({}, {{2, 2}}); }
  static RunSet singleton(std::int64_t r) { return RunSet({r}, {}); }

  bool contains(std::int64_t r) const;

  const std::vector<std::int64_t>& finite() const { return finite_; }
  const std::vector<Progression>& progressions() const { return progressions_; }
  bool empty() const { return finite_.empty() && progressions_.empty(); }

  /// Minimal eventually periodic form of the membership indicator.
  const PeriodicIndicator& canonical() const { return canonical_; }

  /// Rebuilds the set from its canonical indicator: members below the
  /// threshold become the finite part, each periodic class a progression.
  RunSet canonicalized() const;

  std::string describe() const;

  friend bool operator==(const RunSet& a, const RunSet& b) {
    return a.finite_ == b.finite_ && a.progressions_ == b.progressions_;
  }

 private:
  std::vector<std::int64_t> finite_;
  std::vector<Progression> progressions_;
  PeriodicIndicator canonical_;
};

/// Exact (arbitrary precision) or modular arithmetic.
class Arithmetic {
 public:
  static constexpr std::uint64_t kDefaultPrime = 45007;

  Arithmetic() = default;
  static Arithmetic exact() { return Arithmetic(); }
  /// Throws InvalidInput unless `prime` is an odd prime below 2^31.
  static Arithmetic modular(std::uint64_t prime = kDefaultPrime);

  bool is_exact() const { return prime_ == 0; }
  std::uint64_t prime() const { return prime_; }

  friend bool operator==(const Arithmetic&, const Arithmetic&) = default;

 private:
  std::uint64_t prime_ = 0;
};

bool is_prime(std::uint64_t n);

struct Problem {
  int rows = 1;
  std::vector<RunSet> restrictions;
  Arithmetic arithmetic;

  /// Throws InvalidInput if restrictions.size() != rows or rows < 1.
  void validate() const;

  /// All runs of length 1 forbidden in each of three rows.
  static Problem preset_g(Arithmetic arithmetic = {});
  /// All even runs forbidden in each of three rows.
  static Problem preset_h(Arithmetic arithmetic = {});
  static Problem unrestricted(int rows, Arithmetic arithmetic = {});
};

struct WalkWord {
  std::vector<int> letters;  // 1-based axis indices
};

struct Run {
  int letter = 0;
  std::int64_t length = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

/// Splits a word into maximal blocks of equal letters.
std::vector<Run> frequency_notation(const WalkWord& word);

/// True iff every prefix has at least as many j's as (j+1)'s for j < rows.
bool is_tableau_valid(const WalkWord& word, int rows);

/// True iff no run of letter i has a length in restrictions[i-1].
bool word_satisfies(const WalkWord& word, std::span<const RunSet> restrictions);

}  // namespace rrsyt
