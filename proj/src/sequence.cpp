#include "rrsyt/sequence.hpp"

#include "rrsyt/errors.hpp"

namespace rrsyt {

BigInt parse_bigint(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw InvalidInput("not an integer: '" + text + "'");
  }
  return v;
}

TermSequence TermSequence::exact(std::int64_t offset, std::vector<BigInt> values) {
  for (const auto& v : values) {
    if (v < 0) throw InvalidInput("exact terms must be nonnegative");
  }
  TermSequence s;
  s.offset_ = offset;
  s.values_ = std::move(values);
  return s;
}

TermSequence TermSequence::modular(std::int64_t offset, std::uint64_t prime,
                                   std::vector<std::uint64_t> residues) {
  TermSequence s;
  s.arithmetic_ = Arithmetic::modular(prime);
  for (auto r : residues) {
    if (r >= prime) throw InvalidInput("residue out of range");
  }
  s.offset_ = offset;
  s.residues_ = std::move(residues);
  return s;
}

std::uint64_t TermSequence::residue_at(std::size_t i, std::uint64_t p) const {
  if (is_exact()) return reduce_mod(values_.at(i), p);
  if (p != prime()) throw InvalidInput("sequence is modulo a different prime");
  return residues_.at(i);
}

std::string TermSequence::value_string(std::size_t i) const {
  return is_exact() ? to_string(values_.at(i)) : std::to_string(residues_.at(i));
}

TermSequence TermSequence::reduce(std::uint64_t p) const {
  if (!is_exact()) {
    if (p == prime()) return *this;
    throw InvalidInput("cannot reduce a modular sequence to another prime");
  }
  std::vector<std::uint64_t> res;
  res.reserve(values_.size());
  for (const auto& v : values_) res.push_back(reduce_mod(v, p));
  return modular(offset_, p, std::move(res));
}

TermSequence TermSequence::starting_at(std::int64_t n) const {
  if (n < offset_) throw InvalidInput("cannot fabricate terms before the offset");
  auto skip = static_cast<std::size_t>(n - offset_);
  if (skip > size()) skip = size();
  TermSequence s = *this;
  s.offset_ = n;
  if (is_exact()) {
    s.values_.erase(s.values_.begin(), s.values_.begin() + static_cast<std::ptrdiff_t>(skip));
  } else {
    s.residues_.erase(s.residues_.begin(), s.residues_.begin() + static_cast<std::ptrdiff_t>(skip));
  }
  return s;
}

TermSequence TermSequence::prefix(std::size_t count) const {
  TermSequence s = *this;
  if (count < size()) {
    if (is_exact()) {
      s.values_.resize(count);
    } else {
      s.residues_.resize(count);
    }
  }
  return s;
}

}  // namespace rrsyt
