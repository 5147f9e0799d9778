#include "rrsyt/freewalk.hpp"

#include <numeric>
#include <sstream>

#include "rrsyt/errors.hpp"
#include "walk_engine.hpp"

namespace rrsyt {

namespace {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Calls fn(e) for every exponent vector of length k with total degree <= cap.
template <class Fn>
void for_each_exponent(int k, int cap, Fn&& fn) {
  Exponent e(static_cast<std::size_t>(k), 0);
  int degree = 0;
  while (true) {
    fn(e);
    std::size_t j = e.size();
    while (j-- > 0) {
      if (degree < cap) {
        ++e[j];
        ++degree;
        break;
      }
      degree -= e[j];
      e[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int variables, int degree_cap)
    : variables_(variables), degree_cap_(degree_cap) {
  if (variables < 1) throw InvalidInput("series needs at least one variable");
  if (degree_cap < 0) throw InvalidInput("degree cap must be nonnegative");
}

TruncatedSeries TruncatedSeries::one(int variables, int degree_cap) {
  TruncatedSeries s(variables, degree_cap);
  s.set(Exponent(static_cast<std::size_t>(variables), 0), 1);
  return s;
}

TruncatedSeries TruncatedSeries::allowed_runs(int variables, int degree_cap, int axis,
                                              const RunSet& forbidden) {
  TruncatedSeries s(variables, degree_cap);
  Exponent e(static_cast<std::size_t>(variables), 0);
  for (int r = 1; r <= degree_cap; ++r) {
    if (forbidden.contains(r)) continue;
    e[static_cast<std::size_t>(axis)] = r;
    s.set(e, 1);
  }
  return s;
}

TruncatedSeries TruncatedSeries::geometric_all(int variables, int degree_cap) {
  TruncatedSeries s(variables, degree_cap);
  for_each_exponent(variables, degree_cap, [&](const Exponent& e) {
    BigInt c = factorial(static_cast<std::uint64_t>(total_degree(e)));
    for (int ei : e) c /= factorial(static_cast<std::uint64_t>(ei));
    s.set(e, c);
  });
  return s;
}

BigInt TruncatedSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void TruncatedSeries::set(const Exponent& e, BigInt value) {
  if (e.size() != static_cast<std::size_t>(variables_)) {
    throw InvalidInput("exponent length does not match the number of variables");
  }
  if (total_degree(e) > degree_cap_) return;
  if (value == 0) {
    terms_.erase(e);
  } else {
    terms_[e] = std::move(value);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const {
  if (variables_ != other.variables_ || degree_cap_ != other.degree_cap_) {
    throw InvalidInput("series have different variables or caps");
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) set(e, coefficient(e) + c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) set(e, coefficient(e) - c);
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  std::map<Exponent, BigInt> acc;
  Exponent e(static_cast<std::size_t>(a.variables_));
  for (const auto& [ea, ca] : a.terms_) {
    const int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total_degree(eb) > a.degree_cap_) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  }
  TruncatedSeries out(a.variables_, a.degree_cap_);
  for (auto& [ex, c] : acc) out.set(ex, std::move(c));
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int degree_cap) const {
  if (degree_cap > degree_cap_) throw TruncationError("cannot raise the degree cap of a series");
  TruncatedSeries out(variables_, degree_cap);
  for (const auto& [e, c] : terms_) out.set(e, c);
  return out;
}

std::string TruncatedSeries::dump() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << " : " << to_string(c) << '\n';
  }
  return os.str();
}

BigInt free_walk_count(std::span<const int> endpoint, std::span<const RunSet> restrictions) {
  for (int c : endpoint) {
    if (c < 0) throw InvalidInput("free walk endpoint must be componentwise nonnegative");
  }
  std::vector<int> caps(endpoint.begin(), endpoint.end());
  detail::WalkEngine<detail::BigRing> engine({}, detail::Cone::orthant, caps, restrictions);
  BigInt result;
  engine.run([&](std::span<const int> point, const BigInt& g) {
    if (std::equal(point.begin(), point.end(), caps.begin(), caps.end())) result = g;
  });
  return result;
}

std::uint64_t free_walk_count_mod(std::span<const int> endpoint,
                                  std::span<const RunSet> restrictions,
                                  const Arithmetic& arithmetic) {
  if (arithmetic.is_exact()) throw InvalidInput("modular count requested with exact arithmetic");
  for (int c : endpoint) {
    if (c < 0) throw InvalidInput("free walk endpoint must be componentwise nonnegative");
  }
  std::vector<int> caps(endpoint.begin(), endpoint.end());
  detail::WalkEngine<detail::ModRing> engine({arithmetic.prime()}, detail::Cone::orthant, caps,
                                             restrictions);
  std::uint64_t result = 0;
  engine.run([&](std::span<const int> point, std::uint64_t g) {
    if (std::equal(point.begin(), point.end(), caps.begin(), caps.end())) result = g;
  });
  return result;
}

TruncatedSeries solve_restricted_system(int k, std::span<const RunSet> restrictions,
                                        int degree_cap) {
  if (degree_cap < 1) throw InvalidInput("degree cap must be at least 1");
  if (restrictions.size() != static_cast<std::size_t>(k)) {
    throw InvalidInput("need one run-set per variable");
  }
  const auto one = TruncatedSeries::one(k, degree_cap);
  std::vector<TruncatedSeries> multiplier;
  std::vector<TruncatedSeries> parts(static_cast<std::size_t>(k), TruncatedSeries(k, degree_cap));
  for (int i = 0; i < k; ++i) {
    multiplier.push_back(TruncatedSeries::allowed_runs(k, degree_cap, i,
                                                       restrictions[static_cast<std::size_t>(i)]));
  }
  // Each multiplier has positive valuation, so after t rounds every
  // coefficient of total degree <= t is final.
  for (int round = 0; round < degree_cap; ++round) {
    TruncatedSeries sum = one;
    for (const auto& p : parts) sum += p;
    std::vector<TruncatedSeries> next;
    next.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      next.push_back(multiplier[i] * (sum - parts[i]));
    }
    parts = std::move(next);
  }
  TruncatedSeries f = one;
  for (const auto& p : parts) f += p;
  return f;
}

TermSequence series_diagonal(const TruncatedSeries& series, int m) {
  if (m < 1) throw InvalidInput("diagonal length must be positive");
  const long k = series.variables();
  if (static_cast<long>(m) * k > series.degree_cap()) {
    throw TruncationError("diagonal up to n=" + std::to_string(m) + " needs degree cap " +
                          std::to_string(static_cast<long>(m) * k) + ", series is capped at " +
                          std::to_string(series.degree_cap()));
  }
  std::vector<BigInt> values;
  for (int n = 0; n <= m; ++n) {
    values.push_back(series.coefficient(Exponent(static_cast<std::size_t>(k), n)));
  }
  return TermSequence::exact(0, std::move(values));
}

}  // namespace rrsyt
