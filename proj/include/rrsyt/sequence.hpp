#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrsyt/bigint.hpp"
#include "rrsyt/restrict.hpp"

namespace rrsyt {

/// Counts indexed by n = offset, offset+1, ...; either exact nonnegative
/// integers or residues modulo a prime.
class TermSequence {
 public:
  TermSequence() = default;

  static TermSequence exact(std::int64_t offset, std::vector<BigInt> values);
  static TermSequence modular(std::int64_t offset, std::uint64_t prime,
                              std::vector<std::uint64_t> residues);

  bool is_exact() const { return arithmetic_.is_exact(); }
  const Arithmetic& arithmetic() const { return arithmetic_; }
  std::uint64_t prime() const { return arithmetic_.prime(); }
  std::int64_t offset() const { return offset_; }
  std::size_t size() const { return is_exact() ? values_.size() : residues_.size(); }
  bool empty() const { return size() == 0; }

  const std::vector<BigInt>& values() const { return values_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  /// Residue of term i (position, not index n) modulo `p`.
  std::uint64_t residue_at(std::size_t i, std::uint64_t p) const;
  std::string value_string(std::size_t i) const;

  /// Reduces an exact sequence modulo `prime`.
  TermSequence reduce(std::uint64_t prime) const;
  /// Drops leading terms so the sequence starts at index n.
  TermSequence starting_at(std::int64_t n) const;
  TermSequence prefix(std::size_t count) const;

  friend bool operator==(const TermSequence&, const TermSequence&) = default;

 private:
  std::int64_t offset_ = 0;
  Arithmetic arithmetic_;
  std::vector<BigInt> values_;
  std::vector<std::uint64_t> residues_;
};

}  // namespace rrsyt
