#include "rrsyt/restrict.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rrsyt/errors.hpp"

namespace rrsyt {

Shape::Shape(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) {
      throw InvalidShape("shape parts must be positive");
    }
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]) {
      throw InvalidShape("shape parts must be weakly decreasing");
    }
  }
}

Shape Shape::rectangle(int rows, int columns) {
  if (rows < 0 || columns < 0) {
    throw InvalidShape("rectangle dimensions must be nonnegative");
  }
  if (rows == 0 || columns == 0) {
    return Shape();
  }
  return Shape(std::vector<int>(static_cast<std::size_t>(rows), columns));
}

int Shape::cells() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

namespace {

PeriodicIndicator make_indicator(const RunSet& rs) {
  std::int64_t raw_threshold = 1;
  std::int64_t raw_period = 1;
  for (auto r : rs.finite()) {
    raw_threshold = std::max(raw_threshold, r + 1);
  }
  for (const auto& p : rs.progressions()) {
    raw_threshold = std::max(raw_threshold, p.first + 1);
    raw_period = std::lcm(raw_period, p.step);
  }

  std::vector<bool> raw_tail(static_cast<std::size_t>(raw_period));
  for (std::int64_t c = 0; c < raw_period; ++c) {
    std::int64_t r = raw_threshold + (((c - raw_threshold) % raw_period) + raw_period) % raw_period;
    raw_tail[static_cast<std::size_t>(c)] = rs.contains(r);
  }

  // Smallest period dividing the raw one.
  std::int64_t period = raw_period;
  for (std::int64_t d = 1; d <= raw_period; ++d) {
    if (raw_period % d != 0) continue;
    bool ok = true;
    for (std::int64_t c = 0; c < raw_period && ok; ++c) {
      ok = raw_tail[static_cast<std::size_t>(c)] ==
           raw_tail[static_cast<std::size_t>((c + d) % raw_period)];
    }
    if (ok) {
      period = d;
      break;
    }
  }

  PeriodicIndicator ind;
  ind.period = period;
  ind.tail.resize(static_cast<std::size_t>(period));
  for (std::int64_t c = 0; c < period; ++c) {
    ind.tail[static_cast<std::size_t>(c)] = raw_tail[static_cast<std::size_t>(c)];
  }

  std::int64_t threshold = raw_threshold;
  while (threshold > 1 &&
         rs.contains(threshold - 1) ==
             ind.tail[static_cast<std::size_t>((threshold - 1) % period)]) {
    --threshold;
  }
  ind.threshold = threshold;
  ind.head.assign(static_cast<std::size_t>(threshold), false);
  for (std::int64_t r = 1; r < threshold; ++r) {
    ind.head[static_cast<std::size_t>(r)] = rs.contains(r);
  }
  return ind;
}

}  // namespace

RunSet::RunSet(std::vector<std::int64_t> finite, std::vector<Progression> progressions)
    : finite_(std::move(finite)), progressions_(std::move(progressions)) {
  for (auto r : finite_) {
    if (r < 1) throw InvalidInput("run-set elements must be positive");
  }
  for (const auto& p : progressions_) {
    if (p.first < 1 || p.step < 1) {
      throw InvalidInput("progression first and step must be positive");
    }
  }
  std::sort(finite_.begin(), finite_.end());
  finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
  canonical_ = make_indicator(*this);
}

bool RunSet::contains(std::int64_t r) const {
  if (r < 1) return false;
  if (std::binary_search(finite_.begin(), finite_.end(), r)) return true;
  return std::any_of(progressions_.begin(), progressions_.end(), [r](const Progression& p) {
    return r >= p.first && (r - p.first) % p.step == 0;
  });
}

RunSet RunSet::canonicalized() const {
  const auto& ind = canonical_;
  std::vector<std::int64_t> finite;
  for (std::int64_t r = 1; r < ind.threshold; ++r) {
    if (ind.head[static_cast<std::size_t>(r)]) finite.push_back(r);
  }
  std::vector<Progression> progs;
  for (std::int64_t c = 0; c < ind.period; ++c) {
    if (!ind.tail[static_cast<std::size_t>(c)]) continue;
    std::int64_t first = ind.threshold + (((c - ind.threshold) % ind.period) + ind.period) % ind.period;
    progs.push_back({first, ind.period});
  }
  return RunSet(std::move(finite), std::move(progs));
}

std::string RunSet::describe() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto r : finite_) {
    os << (first ? "" : ",") << r;
    first = false;
  }
  for (const auto& p : progressions_) {
    os << (first ? "" : ",") << p.first << "+" << p.step << "t";
    first = false;
  }
  os << '}';
  return os.str();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Arithmetic Arithmetic::modular(std::uint64_t prime) {
  if (prime == 2 || !is_prime(prime) || prime >= (std::uint64_t{1} << 31)) {
    throw InvalidInput("modulus must be an odd prime below 2^31, got " + std::to_string(prime));
  }
  Arithmetic a;
  a.prime_ = prime;
  return a;
}

void Problem::validate() const {
  if (rows < 1) throw InvalidInput("problem needs at least one row");
  if (restrictions.size() != static_cast<std::size_t>(rows)) {
    throw InvalidInput("expected " + std::to_string(rows) + " run-sets, got " +
                       std::to_string(restrictions.size()));
  }
}

Problem Problem::preset_g(Arithmetic arithmetic) {
  return {3, std::vector<RunSet>(3, RunSet::singleton(1)), arithmetic};
}

Problem Problem::preset_h(Arithmetic arithmetic) {
  return {3, std::vector<RunSet>(3, RunSet::evens()), arithmetic};
}

Problem Problem::unrestricted(int rows, Arithmetic arithmetic) {
  return {rows, std::vector<RunSet>(static_cast<std::size_t>(std::max(rows, 0))), arithmetic};
}

std::vector<Run> frequency_notation(const WalkWord& word) {
  std::vector<Run> runs;
  for (int letter : word.letters) {
    if (!runs.empty() && runs.back().letter == letter) {
      ++runs.back().length;
    } else {
      runs.push_back({letter, 1});
    }
  }
  return runs;
}

bool is_tableau_valid(const WalkWord& word, int rows) {
  std::vector<int> counts(static_cast<std::size_t>(rows) + 1, 0);
  for (int letter : word.letters) {
    if (letter < 1 || letter > rows) return false;
    ++counts[static_cast<std::size_t>(letter)];
    if (letter > 1 && counts[static_cast<std::size_t>(letter)] >
                          counts[static_cast<std::size_t>(letter - 1)]) {
      return false;
    }
  }
  return true;
}

bool word_satisfies(const WalkWord& word, std::span<const RunSet> restrictions) {
  for (const auto& run : frequency_notation(word)) {
    if (run.letter < 1 || static_cast<std::size_t>(run.letter) > restrictions.size()) {
      throw InvalidInput("letter " + std::to_string(run.letter) + " outside the alphabet");
    }
    if (restrictions[static_cast<std::size_t>(run.letter - 1)].contains(run.length)) {
      return false;
    }
  }
  return true;
}

}  // namespace rrsyt
