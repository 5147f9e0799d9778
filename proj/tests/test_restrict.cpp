#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "rrsyt/errors.hpp"
#include "rrsyt/restrict.hpp"

using namespace rrsyt;

TEST_CASE("runset membership") {
  CHECK(RunSet({1}, {}).contains(1));
  CHECK_FALSE(RunSet({1}, {}).contains(2));

  const auto evens = RunSet({}, {{2, 2}});
  CHECK_FALSE(evens.contains(7));
  CHECK(evens.contains(8));
  CHECK(evens.contains(2));
  CHECK_FALSE(evens.contains(1));

  const RunSet none;
  for (int r = 1; r < 50; ++r) CHECK_FALSE(none.contains(r));
}

TEST_CASE("runset rejects nonpositive data") {
  CHECK_THROWS_AS(RunSet({0}, {}), InvalidInput);
  CHECK_THROWS_AS(RunSet({}, {{1, 0}}), InvalidInput);
  CHECK_THROWS_AS(RunSet({}, {{0, 2}}), InvalidInput);
}

TEST_CASE("canonical indicator of the case-study sets") {
  const auto single = RunSet::singleton(1).canonical();
  CHECK(single.threshold == 2);
  CHECK(single.period == 1);
  CHECK(single.head[1]);
  CHECK_FALSE(single.tail[0]);

  const auto evens = RunSet::evens().canonical();
  CHECK(evens.threshold == 1);
  CHECK(evens.period == 2);
  CHECK(evens.tail[0]);
  CHECK_FALSE(evens.tail[1]);

  // Overlapping parts: {4} is already on 2+2t.
  const auto overlap = RunSet({4, 6}, {{2, 2}, {4, 4}});
  CHECK(overlap.canonical() == RunSet::evens().canonical());
}

TEST_CASE("canonicalization property: tail agrees with the periodic indicator") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rs = oracle::random_runset(rng);
    const auto& ind = rs.canonical();
    CHECK(ind.threshold >= 1);
    for (std::int64_t r = 1; r <= 10 * (ind.threshold + ind.period) + 20; ++r) {
      CHECK(rs.contains(r) == ind.contains(r));
      if (r >= ind.threshold) {
        CHECK(rs.contains(r) == static_cast<bool>(ind.tail[static_cast<std::size_t>(r % ind.period)]));
      }
    }
    const auto again = rs.canonicalized();
    CHECK(again.canonical() == ind);
    CHECK(again.canonicalized() == again);
  }
}

TEST_CASE("frequency notation") {
  CHECK(frequency_notation({{1, 3, 2, 2, 3, 2}}) ==
        std::vector<Run>{{1, 1}, {3, 1}, {2, 2}, {3, 1}, {2, 1}});
  CHECK(frequency_notation({{1, 1, 1, 3, 3, 2, 2, 2, 1, 1}}) ==
        std::vector<Run>{{1, 3}, {3, 2}, {2, 3}, {1, 2}});
  CHECK(frequency_notation({}).empty());
}

TEST_CASE("frequency notation round-trips on random words") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    const int len = std::uniform_int_distribution<int>(0, 30)(rng);
    WalkWord w;
    for (int i = 0; i < len; ++i) w.letters.push_back(std::uniform_int_distribution<int>(1, k)(rng));
    const auto runs = frequency_notation(w);
    std::vector<int> expanded;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      CHECK(runs[i].length >= 1);
      if (i > 0) CHECK(runs[i].letter != runs[i - 1].letter);
      expanded.insert(expanded.end(), static_cast<std::size_t>(runs[i].length), runs[i].letter);
    }
    CHECK(expanded == w.letters);
  }
}

TEST_CASE("word_satisfies") {
  const std::vector<RunSet> ones(3, RunSet::singleton(1));
  CHECK(word_satisfies({{1, 1, 2, 2, 3, 3}}, ones));
  CHECK_FALSE(word_satisfies({{1, 2, 1, 2, 1, 2}}, ones));

  const std::vector<RunSet> mixed{RunSet::singleton(1), RunSet()};
  CHECK(word_satisfies({{1, 1, 2}}, mixed));
  CHECK_FALSE(word_satisfies({{1, 2, 1}}, mixed));

  CHECK(word_satisfies({}, ones));
  CHECK_THROWS_AS(word_satisfies({{4}}, ones), InvalidInput);
}

TEST_CASE("word_satisfies is invariant under canonicalization") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<RunSet> raw;
    std::vector<RunSet> canon;
    for (int i = 0; i < k; ++i) {
      raw.push_back(oracle::random_runset(rng));
      canon.push_back(raw.back().canonicalized());
    }
    WalkWord w;
    const int len = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < len; ++i) w.letters.push_back(std::uniform_int_distribution<int>(1, k)(rng));
    CHECK(word_satisfies(w, raw) == word_satisfies(w, canon));
  }
}

TEST_CASE("tableau validity of words") {
  CHECK(is_tableau_valid({{1, 2, 1, 2}}, 2));
  CHECK_FALSE(is_tableau_valid({{2, 1}}, 2));
  CHECK_FALSE(is_tableau_valid({{1, 3}}, 3));
  CHECK(is_tableau_valid({}, 3));
}

TEST_CASE("shape validation") {
  CHECK(Shape({3, 3, 2}).cells() == 8);
  CHECK(Shape().empty());
  CHECK_THROWS_AS(Shape({2, 3}), InvalidShape);
  CHECK_THROWS_AS(Shape({2, 0}), InvalidShape);
  CHECK(Shape::rectangle(3, 4) == Shape({4, 4, 4}));
  CHECK(Shape::rectangle(3, 0).empty());
}

TEST_CASE("problem and arithmetic validation") {
  CHECK(Arithmetic::modular().prime() == 45007);
  CHECK_THROWS_AS(Arithmetic::modular(2), InvalidInput);
  CHECK_THROWS_AS(Arithmetic::modular(45009), InvalidInput);
  CHECK_THROWS_AS(Arithmetic::modular(2147483659ULL), InvalidInput);
  CHECK_NOTHROW(Arithmetic::modular(2147483647ULL));

  Problem bad{3, std::vector<RunSet>(2), {}};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  CHECK_NOTHROW(Problem::preset_g().validate());
  CHECK(Problem::preset_h().restrictions[0] == RunSet::evens());
}
