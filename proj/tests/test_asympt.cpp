#include "doctest.h"

#include <cmath>

#include "synthetic.hpp"
#include "rrsyt/asympt.hpp"
#include "rrsyt/errors.hpp"

using namespace rrsyt;

TEST_CASE("richardson is exact on polynomials in 1/n") {
  // s(n) = 3 + 2/n - 5/n^2 + 1/n^3: depth 3 removes every correction.
  std::vector<double> s;
  for (int n = 10; n <= 13; ++n) s.push_back(3 + 2.0 / n - 5.0 / (n * n) + 1.0 / (n * n * n));
  CHECK(richardson(s, 10, 3) == doctest::Approx(3).epsilon(1e-10));
  CHECK(richardson(s, 10, 0) == s[0]);
  CHECK_THROWS_AS(richardson(s, 10, 4), InvalidInput);
}

TEST_CASE("central binomial coefficients") {
  std::vector<BigInt> v;
  for (unsigned n = 0; n < 200; ++n) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    v.push_back(b);
  }
  const auto est = estimate_growth(TermSequence::exact(0, v));
  CHECK(est.mu == doctest::Approx(4).epsilon(1e-8));
  CHECK(est.theta == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(est.c == doctest::Approx(1 / std::sqrt(M_PI)).epsilon(1e-6));
  CHECK(est.n_used == 200);
  CHECK(est.accel_order == 4);
  REQUIRE(est.tables.size() == 3);
  CHECK(est.tables[0].name == "mu");
}

TEST_CASE("pure models are recovered within 1e-6") {
  for (const auto& m : synthetic::suite()) {
    const auto est = estimate_growth(synthetic::sequence(m, 200), 4);
    CHECK(std::abs(est.mu - m.mu) < 1e-6);
    CHECK(std::abs(est.theta - m.theta) < 1e-6);
    CHECK(std::abs(est.c - m.c) < 1e-6);
    CHECK(est.mu_spread >= 0);
    CHECK(est.theta_spread >= 0);
    CHECK(est.c_spread >= 0);
  }
}

TEST_CASE("stability spread does not grow with more terms") {
  for (const auto& m : synthetic::suite()) {
    double prev_mu = INFINITY;
    double prev_theta = INFINITY;
    for (int count : {80, 120, 160, 200}) {
      const auto est = estimate_growth(synthetic::sequence(m, count), 4);
      CHECK(est.mu_spread <= prev_mu);
      CHECK(est.theta_spread <= prev_theta);
      prev_mu = est.mu_spread;
      prev_theta = est.theta_spread;
    }
  }
}

TEST_CASE("scaling the sequence changes only C") {
  for (const auto& m : synthetic::suite()) {
    const auto seq = synthetic::sequence(m, 200);
    std::vector<BigInt> scaled;
    for (const auto& v : seq.values()) scaled.push_back(v * 1000);
    const auto a = estimate_growth(seq);
    const auto b = estimate_growth(TermSequence::exact(seq.offset(), scaled));
    CHECK(std::abs(a.mu - b.mu) <= std::max(a.mu_spread, b.mu_spread) + 1e-12);
    CHECK(std::abs(a.theta - b.theta) <= std::max(a.theta_spread, b.theta_spread) + 1e-9);
    CHECK(b.c == doctest::Approx(1000 * a.c).epsilon(1e-6));
  }
}

TEST_CASE("usable window starts after the last nonpositive term") {
  const auto m = synthetic::suite().front();
  auto seq = synthetic::sequence(m, 120);
  std::vector<BigInt> v = seq.values();
  v[3] = 0;
  const auto est = estimate_growth(TermSequence::exact(seq.offset(), v));
  CHECK(est.n_used == 116);
  CHECK(std::abs(est.mu - m.mu) < 1e-6);

  v[90] = 0;
  CHECK_THROWS_AS(estimate_growth(TermSequence::exact(seq.offset(), v)), DomainError);
  CHECK_THROWS_AS(estimate_growth(seq.prefix(30)), ShortfallError);
  CHECK_THROWS_AS(estimate_growth(seq.reduce(45007)), InvalidInput);
}

TEST_CASE("estimates are deterministic") {
  const auto seq = synthetic::sequence(synthetic::suite().back(), 150);
  const auto a = estimate_growth(seq);
  const auto b = estimate_growth(seq);
  CHECK(a.mu == b.mu);
  CHECK(a.theta == b.theta);
  CHECK(a.c == b.c);
}

TEST_CASE("match_constant") {
  const auto bases = default_base_candidates();
  const auto h = match_constant(14.07106, bases);
  CHECK(h.best.name == "7+5√2");
  CHECK(h.residual < 1e-4);
  CHECK(match_constant(8.0003, bases).best.name == "8");
  CHECK(match_constant(-3.98, default_exponent_candidates(4)).best.name == "-4");
  CHECK(match_constant(-3.49, default_exponent_candidates(4)).best.name == "-7/2");
  CHECK_THROWS_AS(match_constant(1.0, {}), InvalidInput);
}

TEST_CASE("format_estimate keeps only supported digits") {
  CHECK(format_estimate(8.000123456, 1e-3) == "8.000");
  CHECK(format_estimate(-3.9999997, 2e-6) == "-4.00000");
  CHECK(format_estimate(0.52128495, 0.5) == "1");
}
