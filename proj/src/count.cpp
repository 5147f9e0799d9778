#include "rrsyt/count.hpp"

#include <vector>

#include "rrsyt/errors.hpp"
#include "walk_engine.hpp"

namespace rrsyt {

namespace {

void check_rows(const Shape& shape, std::span<const RunSet> restrictions) {
  if (restrictions.size() != static_cast<std::size_t>(shape.rows())) {
    throw InvalidInput("shape has " + std::to_string(shape.rows()) + " rows but " +
                       std::to_string(restrictions.size()) + " run-sets were given");
  }
}

template <class Ring>
typename Ring::value_type count_at(Ring ring, const Shape& shape,
                                   std::span<const RunSet> restrictions) {
  check_rows(shape, restrictions);
  detail::WalkEngine<Ring> engine(std::move(ring), detail::Cone::weyl, shape.parts(), restrictions);
  typename Ring::value_type result{};
  const auto& target = shape.parts();
  engine.run([&](std::span<const int> point, const typename Ring::value_type& g) {
    if (std::equal(point.begin(), point.end(), target.begin(), target.end())) result = g;
  });
  return result;
}

void enumerate_words(std::vector<int>& counts, const std::vector<int>& parts, WalkWord& word,
                     std::span<const RunSet> restrictions, BigInt& total) {
  bool complete = true;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (counts[i] == parts[i]) continue;
    complete = false;
    if (i > 0 && counts[i] + 1 > counts[i - 1]) continue;
    ++counts[i];
    word.letters.push_back(static_cast<int>(i) + 1);
    enumerate_words(counts, parts, word, restrictions, total);
    word.letters.pop_back();
    --counts[i];
  }
  if (complete && word_satisfies(word, restrictions)) ++total;
}

}  // namespace

BigInt count_restricted(const Shape& shape, std::span<const RunSet> restrictions) {
  return count_at(detail::BigRing{}, shape, restrictions);
}

std::uint64_t count_restricted_mod(const Shape& shape, std::span<const RunSet> restrictions,
                                   const Arithmetic& arithmetic) {
  if (arithmetic.is_exact()) throw InvalidInput("modular count requested with exact arithmetic");
  return count_at(detail::ModRing{arithmetic.prime()}, shape, restrictions);
}

namespace {

template <class Ring>
std::vector<typename Ring::value_type> sweep_diagonal(Ring ring, const Problem& problem, int n_max,
                                                      const DiagonalOptions& options) {
  const auto k = static_cast<std::size_t>(problem.rows);
  detail::WalkEngine<Ring> engine(std::move(ring), detail::Cone::weyl,
                                  std::vector<int>(k, n_max), problem.restrictions,
                                  options.memory_budget);
  std::vector<typename Ring::value_type> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  engine.run([&](std::span<const int> point, const typename Ring::value_type& g) {
    // In the Weyl cone first == last means every coordinate is equal.
    if (point.front() != point.back()) return;
    out.push_back(g);
    if (options.on_term) {
      if constexpr (std::is_same_v<typename Ring::value_type, BigInt>) {
        options.on_term(point.front(), to_string(g));
      } else {
        options.on_term(point.front(), std::to_string(g));
      }
    }
  });
  return out;
}

}  // namespace

TermSequence diagonal_sequence(const Problem& problem, int n_max, const DiagonalOptions& options) {
  problem.validate();
  if (n_max < 1) throw InvalidInput("n_max must be at least 1");
  if (problem.arithmetic.is_exact()) {
    return TermSequence::exact(0, sweep_diagonal(detail::BigRing{}, problem, n_max, options));
  }
  const auto p = problem.arithmetic.prime();
  return TermSequence::modular(0, p, sweep_diagonal(detail::ModRing{p}, problem, n_max, options));
}

BigInt young_frobenius(const Shape& shape) {
  const auto& parts = shape.parts();
  const auto k = static_cast<long>(parts.size());
  BigInt numerator = factorial(static_cast<std::uint64_t>(shape.cells()));
  for (long i = 0; i < k; ++i) {
    for (long j = i + 1; j < k; ++j) {
      numerator *= parts[static_cast<std::size_t>(i)] - parts[static_cast<std::size_t>(j)] + (j - i);
    }
  }
  BigInt denominator = 1;
  for (long i = 0; i < k; ++i) {
    denominator *= factorial(static_cast<std::uint64_t>(parts[static_cast<std::size_t>(i)] + (k - 1 - i)));
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return out;
}

BigInt rect_closed_form(int k, int n) {
  if (k < 1) throw InvalidInput("rectangle needs at least one row");
  if (n < 0) throw InvalidInput("rectangle width must be nonnegative");
  BigInt numerator = factorial(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k));
  BigInt denominator = 1;
  for (int i = 0; i < k; ++i) {
    numerator *= factorial(static_cast<std::uint64_t>(i));
    denominator *= factorial(static_cast<std::uint64_t>(n + i));
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return out;
}

BigInt brute_force_count(const Shape& shape, std::span<const RunSet> restrictions) {
  check_rows(shape, restrictions);
  if (shape.cells() > kBruteForceMaxCells) {
    throw SizeError("brute force limited to " + std::to_string(kBruteForceMaxCells) +
                    " cells, shape has " + std::to_string(shape.cells()));
  }
  std::vector<int> counts(static_cast<std::size_t>(shape.rows()), 0);
  WalkWord word;
  BigInt total = 0;
  enumerate_words(counts, shape.parts(), word, restrictions, total);
  return total;
}

}  // namespace rrsyt
