#include "rrsyt/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <boost/multiprecision/mpfr.hpp>

#include "rrsyt/errors.hpp"

namespace rrsyt {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>>;

Real to_real(const BigInt& v) {
  Real out;
  mpfr_set_z(out.backend().data(), v.get_mpz_t(), MPFR_RNDN);
  return out;
}

template <class T>
T richardson_at(const std::vector<T>& s, std::size_t first, std::int64_t n0, int depth) {
  // sum_j (-1)^(depth-j) (n0+j)^depth s(n0+j) / (j! (depth-j)!)
  T acc = 0;
  T fact_j = 1;
  for (int j = 0; j <= depth; ++j) {
    if (j > 0) fact_j *= j;
    T fact_rest = 1;
    for (int t = 2; t <= depth - j; ++t) fact_rest *= t;
    T weight = pow(T(n0 + j), depth) / (fact_j * fact_rest);
    if ((depth - j) % 2) weight = -weight;
    acc += weight * s[first + static_cast<std::size_t>(j)];
  }
  return acc;
}

struct Accelerated {
  Real value;
  double spread = 0;
  ExtrapolationTable table;
};

// s[i] is the value at n = n_first + i.
Accelerated accelerate(const std::string& name, const std::vector<Real>& s, std::int64_t n_first,
                       int depth) {
  const auto count = static_cast<std::int64_t>(s.size());
  const std::int64_t last_base = count - 1 - depth;
  if (last_base < 0) throw ShortfallError("not enough terms to extrapolate " + name, static_cast<std::size_t>(depth + 1));

  Accelerated out;
  out.table.name = name;
  const std::int64_t rows_kept = std::min<std::int64_t>(last_base + 1, 10);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::int64_t b = last_base - rows_kept + 1; b <= last_base; ++b) {
    std::vector<double> row;
    Real deepest;
    for (int m = 0; m <= depth; ++m) {
      Real v = richardson_at(s, static_cast<std::size_t>(b), n_first + b, m);
      row.push_back(v.convert_to<double>());
      if (m == depth) deepest = v;
    }
    out.table.n.push_back(n_first + b);
    out.table.depth.push_back(std::move(row));
    if (b > last_base - static_cast<std::int64_t>(kStabilityWindow)) {
      lo = std::min(lo, deepest.convert_to<double>());
      hi = std::max(hi, deepest.convert_to<double>());
    }
    if (b == last_base) out.value = deepest;
  }
  out.spread = hi - lo;
  return out;
}

}  // namespace

double richardson(const std::vector<double>& values, std::int64_t n0, int depth) {
  if (depth < 0 || values.size() < static_cast<std::size_t>(depth) + 1) {
    throw InvalidInput("richardson needs depth+1 values");
  }
  return richardson_at(values, 0, n0, depth);
}

GrowthEstimate estimate_growth(const TermSequence& seq, int accel_order) {
  if (!seq.is_exact()) throw InvalidInput("growth estimation needs exact terms");
  if (accel_order < 0) throw InvalidInput("extrapolation depth must be nonnegative");

  std::size_t start = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.values()[i] <= 0) start = i + 1;
  }
  const std::size_t usable = seq.size() - start;
  const std::size_t needed = std::max(kMinGrowthTerms, static_cast<std::size_t>(accel_order) + kStabilityWindow + 2);
  if (usable < needed) {
    if (start > 0 && seq.size() >= needed) {
      throw DomainError("nonpositive term at n=" + std::to_string(seq.offset() + static_cast<std::int64_t>(start) - 1) +
                        " leaves only " + std::to_string(usable) + " usable terms");
    }
    throw ShortfallError("growth estimation needs at least " + std::to_string(needed) +
                             " positive terms, have " + std::to_string(usable),
                         needed);
  }

  const std::int64_t n_first = seq.offset() + static_cast<std::int64_t>(start);
  std::vector<Real> logs;
  logs.reserve(usable);
  for (std::size_t i = start; i < seq.size(); ++i) logs.push_back(log(to_real(seq.values()[i])));

  std::vector<Real> ratios;
  for (std::size_t i = 0; i + 1 < logs.size(); ++i) ratios.push_back(exp(logs[i + 1] - logs[i]));
  auto mu = accelerate("mu", ratios, n_first, accel_order);

  std::vector<Real> theta_seq;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const Real n = Real(n_first + static_cast<std::int64_t>(i));
    theta_seq.push_back(n * (ratios[i] / mu.value - 1));
  }
  auto theta = accelerate("theta", theta_seq, n_first, accel_order);

  // C(n) needs log n, so the table starts at n >= 1.
  const std::int64_t c_first = std::max<std::int64_t>(n_first, 1);
  const Real log_mu = log(mu.value);
  std::vector<Real> c_seq;
  for (std::size_t i = static_cast<std::size_t>(c_first - n_first); i < logs.size(); ++i) {
    const Real n = Real(n_first + static_cast<std::int64_t>(i));
    c_seq.push_back(exp(logs[i] - n * log_mu - theta.value * log(n)));
  }
  auto c = accelerate("C", c_seq, c_first, accel_order);

  GrowthEstimate out;
  out.mu = mu.value.convert_to<double>();
  out.theta = theta.value.convert_to<double>();
  out.c = c.value.convert_to<double>();
  out.n_used = usable;
  out.accel_order = accel_order;
  out.mu_spread = mu.spread;
  out.theta_spread = theta.spread;
  out.c_spread = c.spread;
  out.tables = {std::move(mu.table), std::move(theta.table), std::move(c.table)};
  if (!std::isfinite(out.mu) || !std::isfinite(out.theta) || !std::isfinite(out.c)) {
    throw DomainError("growth estimate is not finite");
  }
  return out;
}

std::string format_estimate(double value, double spread) {
  int decimals = 12;
  if (spread > 0) {
    decimals = std::clamp(static_cast<int>(std::floor(-std::log10(spread))), 0, 15);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::vector<NamedConstant> default_base_candidates() {
  std::vector<NamedConstant> out;
  for (int v = 1; v <= 30; ++v) out.push_back({std::to_string(v), static_cast<double>(v)});
  for (int root : {2, 3}) {
    const double s = std::sqrt(static_cast<double>(root));
    const std::string sym = "√" + std::to_string(root);
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        if (b == 0) continue;
        const double v = a + b * s;
        if (v <= 0) continue;
        std::string name;
        if (a != 0) name = std::to_string(a) + (b > 0 ? "+" : "-");
        else if (b < 0) name = "-";
        const int mag = std::abs(b);
        name += (mag == 1 ? "" : std::to_string(mag)) + sym;
        out.push_back({name, v});
      }
    }
  }
  return out;
}

std::vector<NamedConstant> default_exponent_candidates(int max_denominator) {
  std::vector<NamedConstant> out;
  for (int q = 1; q <= max_denominator; ++q) {
    for (int p = -10 * q; p <= 10 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      std::string name = std::to_string(p);
      if (q != 1) name += "/" + std::to_string(q);
      out.push_back({name, static_cast<double>(p) / q});
    }
  }
  return out;
}

ConstantMatch match_constant(double value, const std::vector<NamedConstant>& candidates) {
  if (candidates.empty()) throw InvalidInput("no candidate constants given");
  ConstantMatch best{candidates.front(), std::abs(value - candidates.front().value)};
  for (const auto& c : candidates) {
    const double r = std::abs(value - c.value);
    if (r < best.residual) best = {c, r};
  }
  return best;
}

}  // namespace rrsyt
