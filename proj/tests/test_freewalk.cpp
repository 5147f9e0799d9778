#include "doctest.h"

#include "oracles.hpp"
#include "rrsyt/errors.hpp"
#include "rrsyt/freewalk.hpp"

using namespace rrsyt;

namespace {

std::vector<RunSet> same(int k, const RunSet& rs) { return std::vector<RunSet>(static_cast<std::size_t>(k), rs); }

// Every exponent vector of length k with total degree <= cap.
std::vector<Exponent> exponents(int k, int cap) {
  std::vector<Exponent> out;
  Exponent cur(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int axis, int left) -> void {
    if (axis == k) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<std::size_t>(axis)] = e;
      self(self, axis + 1, left - e);
    }
  };
  rec(rec, 0, cap);
  return out;
}

}  // namespace

TEST_CASE("free_walk_count examples") {
  const std::vector<int> a{1, 1};
  CHECK(free_walk_count(a, same(2, RunSet())) == 2);
  const std::vector<int> b{2, 1};
  CHECK(free_walk_count(b, std::vector<RunSet>{RunSet::singleton(1), RunSet()}) == 2);
  const std::vector<int> c{3, 2, 2};
  CHECK(free_walk_count(c, same(3, RunSet())) == oracle::multinomial(c));
  const std::vector<int> origin{0, 0, 0};
  CHECK(free_walk_count(origin, same(3, RunSet::singleton(1))) == 1);
}

TEST_CASE("free_walk_count agrees with word enumeration") {
  for (const auto& rs : oracle::runset_battery()) {
    for (const auto& e : exponents(3, 7)) {
      CHECK(free_walk_count(e, same(3, rs)) == oracle::free_words(e, same(3, rs)));
    }
  }
}

TEST_CASE("free_walk_count input validation") {
  const std::vector<int> bad{1, -1};
  CHECK_THROWS_AS(free_walk_count(bad, same(2, RunSet())), InvalidInput);
  const std::vector<int> ok{1, 1};
  CHECK_THROWS_AS(free_walk_count(ok, same(3, RunSet())), InvalidInput);
  CHECK(free_walk_count_mod(std::vector<int>{2, 2, 2}, same(3, RunSet()), Arithmetic::modular(7)) == 90 % 7);
}

TEST_CASE("solve_restricted_system examples") {
  const auto f2 = solve_restricted_system(2, same(2, RunSet()), 3);
  CHECK(f2.coefficient({1, 1}) == 2);

  const auto f1 = solve_restricted_system(1, same(1, RunSet::singleton(1)), 5);
  CHECK(f1.coefficient({1}) == 0);
  CHECK(f1.coefficient({2}) == 1);
  CHECK(f1.coefficient({3}) == 1);
  CHECK(f1.coefficient({0}) == 1);

  const auto f3 = solve_restricted_system(3, same(3, RunSet::singleton(1)), 6);
  CHECK(f3.coefficient({2, 2, 2}) == free_walk_count(std::vector<int>{2, 2, 2}, same(3, RunSet::singleton(1))));

  CHECK_THROWS_AS(solve_restricted_system(2, same(2, RunSet()), 0), InvalidInput);
}

TEST_CASE("series coefficients equal walk counts for every battery member") {
  for (int k = 2; k <= 3; ++k) {
    for (const auto& rs : oracle::runset_battery()) {
      const auto family = same(k, rs);
      const auto f = solve_restricted_system(k, family, 10);
      for (const auto& e : exponents(k, 10)) CHECK(f.coefficient(e) == free_walk_count(e, family));
    }
  }
}

TEST_CASE("empty restrictions give the inverse of 1 - sum x") {
  for (int k = 1; k <= 3; ++k) {
    const auto f = solve_restricted_system(k, same(k, RunSet()), 12);
    CHECK(f == TruncatedSeries::geometric_all(k, 12));
    auto one_minus = TruncatedSeries::one(k, 12);
    for (int i = 0; i < k; ++i) {
      Exponent e(static_cast<std::size_t>(k), 0);
      e[static_cast<std::size_t>(i)] = 1;
      one_minus.set(e, -1);
    }
    CHECK(f * one_minus == TruncatedSeries::one(k, 12));
  }
}

TEST_CASE("series_diagonal") {
  CHECK(series_diagonal(TruncatedSeries::geometric_all(2, 6), 3).values() == std::vector<BigInt>{1, 2, 6, 20});
  const auto f3 = solve_restricted_system(3, same(3, RunSet()), 9);
  CHECK(series_diagonal(f3, 3).values() == std::vector<BigInt>{1, 6, 90, 1680});

  const auto ones = same(2, RunSet::singleton(1));
  const auto f = solve_restricted_system(2, ones, 8);
  const auto diag = series_diagonal(f, 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(diag.values()[static_cast<std::size_t>(n)] == oracle::free_words({n, n}, ones));
  }
  CHECK_THROWS_AS(series_diagonal(f, 5), TruncationError);
}

TEST_CASE("truncated series arithmetic") {
  TruncatedSeries a(2, 3);
  a.set({1, 0}, 2);
  a.set({0, 1}, 3);
  a.set({3, 1}, 5);  // above the cap, ignored
  CHECK(a.terms().size() == 2);
  const auto sq = a * a;
  CHECK(sq.coefficient({2, 0}) == 4);
  CHECK(sq.coefficient({1, 1}) == 12);
  CHECK(sq.coefficient({0, 2}) == 9);
  CHECK((a - a).terms().empty());
  CHECK((a + a).coefficient({0, 1}) == 6);
  CHECK(a.dump() == "0 1 : 3\n1 0 : 2\n");
  CHECK(TruncatedSeries::geometric_all(2, 6).truncated(2) == TruncatedSeries::geometric_all(2, 2));
  CHECK_THROWS_AS(a + TruncatedSeries(3, 3), InvalidInput);

  const auto evens = TruncatedSeries::allowed_runs(1, 6, 0, RunSet::evens());
  CHECK(evens.coefficient({1}) == 1);
  CHECK(evens.coefficient({2}) == 0);
  CHECK(evens.coefficient({5}) == 1);
  CHECK(evens.coefficient({0}) == 0);
}
