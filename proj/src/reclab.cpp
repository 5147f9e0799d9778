#include "rrsyt/reclab.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "rrsyt/errors.hpp"

namespace rrsyt {

Recurrence::Recurrence(std::vector<std::vector<BigInt>> coeffs, std::uint64_t prime)
    : coeffs_(std::move(coeffs)), prime_(prime) {
  if (coeffs_.empty() || coeffs_.front().empty()) {
    throw InvalidInput("recurrence needs at least one coefficient");
  }
  const std::size_t width = coeffs_.front().size();
  for (auto& poly : coeffs_) {
    if (poly.size() != width) throw InvalidInput("coefficient polynomials must share a degree");
    if (prime_ != 0) {
      for (auto& c : poly) c = BigInt(reduce_mod(c, prime_));
    }
  }
  auto is_zero = [](const std::vector<BigInt>& poly) {
    return std::all_of(poly.begin(), poly.end(), [](const BigInt& c) { return c == 0; });
  };
  while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidInput("the zero recurrence is not a recurrence");

  if (prime_ == 0) {
    BigInt content = 0;
    for (const auto& poly : coeffs_) {
      for (const auto& c : poly) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    }
    const auto& lead_poly = coeffs_.back();
    BigInt lead = 0;
    for (std::size_t j = lead_poly.size(); j-- > 0;) {
      if (lead_poly[j] != 0) {
        lead = lead_poly[j];
        break;
      }
    }
    if (lead < 0) content = -content;
    for (auto& poly : coeffs_) {
      for (auto& c : poly) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    }
  }
}

BigInt Recurrence::poly_at(int i, const BigInt& n) const {
  const auto& poly = coeffs_.at(static_cast<std::size_t>(i));
  BigInt acc = 0;
  for (std::size_t j = poly.size(); j-- > 0;) {
    acc = acc * n + poly[j];
    if (prime_ != 0) acc = BigInt(reduce_mod(acc, prime_));
  }
  return acc;
}

namespace {

std::string poly_string(const std::vector<BigInt>& poly) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = poly.size(); j-- > 0;) {
    const BigInt& c = poly[j];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0 || mag != 1) os << mag.get_str();
    if (j > 0) {
      if (mag != 1) os << '*';
      os << 'n';
      if (j > 1) os << '^' << j;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string Recurrence::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    auto text = poly_string(coeffs_[i]);
    if (text == "0") continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << text << ")*a(n" << (i ? "+" + std::to_string(i) : "") << ')';
  }
  os << " = 0";
  if (prime_ != 0) os << " (mod " << prime_ << ')';
  return os.str();
}

VerificationReport verify_recurrence(const Recurrence& rec, const TermSequence& seq) {
  const auto L = static_cast<std::size_t>(rec.order());
  if (seq.size() <= L) {
    throw ShortfallError("verification needs more than " + std::to_string(L) + " terms", L + 1);
  }
  std::uint64_t p = rec.prime();
  if (!seq.is_exact()) {
    if (p != 0 && p != seq.prime()) throw InvalidInput("recurrence and sequence use different primes");
    p = seq.prime();
  }

  VerificationReport report;
  for (std::size_t t = 0; t + L < seq.size(); ++t) {
    const BigInt n = BigInt(static_cast<long>(seq.offset())) + static_cast<long>(t);
    BigInt sum = 0;
    for (std::size_t i = 0; i <= L; ++i) {
      BigInt term = p != 0 ? BigInt(seq.residue_at(t + i, p)) : seq.values()[t + i];
      sum += rec.poly_at(static_cast<int>(i), n) * term;
    }
    ++report.windows_checked;
    const bool zero = p != 0 ? reduce_mod(sum, p) == 0 : sum == 0;
    if (!zero) {
      report.holds = false;
      report.first_failing_n = seq.offset() + static_cast<std::int64_t>(t);
      break;
    }
  }
  return report;
}

std::size_t required_terms(int order, int degree, std::size_t margin) {
  return static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(degree + 1) +
         static_cast<std::size_t>(order) + margin;
}

modp::Matrix recurrence_system(const TermSequence& seq, int order, int degree) {
  if (seq.is_exact()) throw InvalidInput("recurrence systems are built over GF(p)");
  if (order < 0 || degree < 0) throw InvalidInput("order and degree must be nonnegative");
  const std::uint64_t p = seq.prime();
  const auto L = static_cast<std::size_t>(order);
  const auto width = static_cast<std::size_t>(degree) + 1;
  const std::size_t rows = seq.size() > L ? seq.size() - L : 0;
  modp::Matrix m(rows, (L + 1) * width);
  const auto& a = seq.residues();
  const auto sp = static_cast<std::int64_t>(p);
  for (std::size_t t = 0; t < rows; ++t) {
    const std::int64_t n = seq.offset() + static_cast<std::int64_t>(t);
    const auto n_mod = static_cast<std::uint64_t>(((n % sp) + sp) % sp);
    for (std::size_t i = 0; i <= L; ++i) {
      std::uint64_t v = a[t + i];
      for (std::size_t j = 0; j < width; ++j) {
        m.at(t, i * width + j) = static_cast<std::uint32_t>(v);
        v = v * n_mod % p;
      }
    }
  }
  return m;
}

namespace {

void require_guessable(const TermSequence& seq, int order, int degree, std::size_t margin) {
  if (seq.is_exact()) throw InvalidInput("guessing works on a modular sequence; reduce it first");
  const std::size_t need = required_terms(order, degree, margin);
  if (seq.size() < need) {
    throw ShortfallError("order " + std::to_string(order) + ", degree " + std::to_string(degree) +
                             " needs N >= " + std::to_string(need) + " terms, have " +
                             std::to_string(seq.size()),
                         need);
  }
  const auto& r = seq.residues();
  if (std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; })) {
    throw DomainError("all-zero sequence satisfies every recurrence");
  }
}

Recurrence to_recurrence(const std::vector<std::uint64_t>& v, int order, int degree,
                         std::uint64_t p) {
  std::uint64_t scale = 0;
  for (auto x : v) {
    if (x != 0) {
      scale = modp::inv(x, p);
      break;
    }
  }
  const auto width = static_cast<std::size_t>(degree) + 1;
  std::vector<std::vector<BigInt>> coeffs(static_cast<std::size_t>(order) + 1,
                                          std::vector<BigInt>(width));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      coeffs[i][j] = BigInt(static_cast<unsigned long>(v[i * width + j] * scale % p));
    }
  }
  return Recurrence(std::move(coeffs), p);
}

}  // namespace

std::vector<Recurrence> guess_recurrence(const TermSequence& seq, int order, int degree,
                                         std::size_t margin, modp::PivotOrder pivot) {
  require_guessable(seq, order, degree, margin);
  const auto basis = modp::nullspace(recurrence_system(seq, order, degree), seq.prime(), pivot);
  std::vector<Recurrence> out;
  out.reserve(basis.size());
  for (const auto& v : basis) out.push_back(to_recurrence(v, order, degree, seq.prime()));
  return out;
}

bool Certificate::is_ruled_out(Cell c) const {
  return std::binary_search(ruled_out.begin(), ruled_out.end(), c);
}

int max_certifiable_budget(std::size_t terms, std::size_t margin) {
  int k = -1;
  while (required_terms(k + 1, k + 1, margin) <= terms) ++k;
  return k;
}

Certificate certify_absence(const TermSequence& seq, int budget, const CertifyOptions& options) {
  if (seq.is_exact()) throw InvalidInput("certification works on a modular sequence");
  if (budget < 0) throw InvalidInput("budget must be nonnegative");
  {
    const auto& r = seq.residues();
    if (std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; })) {
      throw DomainError("all-zero sequence satisfies every recurrence");
    }
  }
  const std::size_t n_terms = seq.size();
  const std::size_t margin = options.margin;
  auto feasible = [&](int L, int d) {
    return L >= 0 && d >= 0 && L <= budget && d <= budget &&
           required_terms(L, d, margin) <= n_terms;
  };

  Certificate cert;
  cert.prime = seq.prime();
  cert.terms_used = n_terms;
  cert.margin = margin;
  cert.budget = budget;

  // The largest feasible order bounds the work: beyond it no cell has enough
  // equations whatever the degree.
  int max_order = -1;
  while (feasible(max_order + 1, 0)) ++max_order;

  // nullity of every solved cell with a nontrivial kernel
  std::map<Cell, std::size_t> nullity;
  std::set<Cell> ruled;
  const unsigned threads = std::max(1u, options.threads);

  for (int level = 2 * budget; level >= 0; --level) {
    std::vector<Cell> to_solve;
    for (int L = std::min(level, max_order); L >= 0; --L) {
      const int d = level - L;
      if (!feasible(L, d)) continue;
      const bool implied = (feasible(L + 1, d) && ruled.count({L + 1, d})) ||
                           (feasible(L, d + 1) && ruled.count({L, d + 1}));
      if (implied) {
        ruled.insert({L, d});
      } else {
        to_solve.push_back({L, d});
      }
    }
    for (std::size_t start = 0; start < to_solve.size(); start += threads) {
      const std::size_t stop = std::min(to_solve.size(), start + threads);
      std::vector<std::future<std::size_t>> jobs;
      for (std::size_t i = start; i < stop; ++i) {
        const Cell c = to_solve[i];
        jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, [&seq, c] {
          const auto m = recurrence_system(seq, c.order, c.degree);
          return m.cols - modp::rank(m, seq.prime());
        }));
      }
      for (std::size_t i = start; i < stop; ++i) {
        const Cell c = to_solve[i];
        const std::size_t k = jobs[i - start].get();
        cert.solved.push_back(c);
        if (k == 0) {
          ruled.insert(c);
        } else {
          nullity[c] = k;
        }
      }
    }
  }

  cert.ruled_out.assign(ruled.begin(), ruled.end());
  std::sort(cert.solved.begin(), cert.solved.end());
  for (const auto& [c, k] : nullity) {
    cert.nonempty.emplace_back(c, k);
    const bool below_order = c.order > 0 && nullity.count({c.order - 1, c.degree});
    const bool below_degree = c.degree > 0 && nullity.count({c.order, c.degree - 1});
    if (below_order || below_degree) continue;
    for (auto& rec : guess_recurrence(seq, c.order, c.degree, margin)) {
      auto report = verify_recurrence(rec, seq);
      cert.survivors.push_back({c, std::move(rec), report});
    }
  }

  for (int L = 0; L <= budget; ++L) {
    for (int d = 0; d <= budget; ++d) {
      if (!feasible(L, d)) ++cert.unchecked;
    }
  }

  int k = -1;
  while (k + 1 <= budget && cert.is_ruled_out({k + 1, k + 1})) ++k;
  cert.certified_k = k;
  return cert;
}

std::vector<std::uint64_t> default_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 45007; out.size() < count; p += 2) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

std::optional<std::pair<BigInt, BigInt>> rational_reconstruct(const BigInt& x, const BigInt& m) {
  BigInt bound;
  BigInt half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = m;
  BigInt r1 = x % m;
  if (r1 < 0) r1 += m;
  BigInt s0 = 0;
  BigInt s1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  if (s1 < 0) {
    s1 = -s1;
    r1 = -r1;
  }
  return std::make_pair(r1, s1);
}

LiftResult lift_recurrence(const TermSequence& exact, int order, int degree,
                           std::span<const std::uint64_t> primes, std::size_t margin) {
  if (!exact.is_exact()) throw InvalidInput("lifting needs exact terms");
  if (primes.size() < 2) throw InvalidInput("lifting needs at least two primes");

  struct PerPrime {
    std::uint64_t p;
    std::vector<Recurrence> basis;
  };
  std::vector<PerPrime> runs;
  for (auto p : primes) runs.push_back({p, guess_recurrence(exact.reduce(p), order, degree, margin)});

  std::size_t min_dim = runs.front().basis.size();
  for (const auto& r : runs) min_dim = std::min(min_dim, r.basis.size());
  LiftResult result;
  for (const auto& r : runs) {
    if (r.basis.size() != min_dim) {
      result.status = LiftStatus::unlucky_prime;
      result.prime = r.p;
      result.message = "solution space modulo " + std::to_string(r.p) + " has dimension " +
                       std::to_string(r.basis.size()) + ", other primes give " +
                       std::to_string(min_dim);
      return result;
    }
  }
  if (min_dim == 0) {
    result.status = LiftStatus::no_solution;
    result.message = "no recurrence of order " + std::to_string(order) + " and degree " +
                     std::to_string(degree);
    return result;
  }
  if (min_dim > 1) {
    result.status = LiftStatus::ambiguous;
    result.message = "solution space has dimension " + std::to_string(min_dim) +
                     "; lower the order or degree";
    return result;
  }

  const auto width = static_cast<std::size_t>(degree) + 1;
  const std::size_t unknowns = (static_cast<std::size_t>(order) + 1) * width;
  // Flatten each normalized solution back to full (order+1)(degree+1) width;
  // trailing zero polynomials were trimmed by the Recurrence constructor.
  auto flatten = [&](const Recurrence& rec) {
    std::vector<BigInt> flat(unknowns, 0);
    for (std::size_t i = 0; i < rec.coeffs().size(); ++i) {
      for (std::size_t j = 0; j < width; ++j) flat[i * width + j] = rec.coeffs()[i][j];
    }
    return flat;
  };
  auto leading_index = [](const std::vector<BigInt>& flat) {
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (flat[i] != 0) return i;
    }
    return flat.size();
  };

  std::vector<std::vector<BigInt>> flats;
  for (const auto& r : runs) flats.push_back(flatten(r.basis.front()));
  const std::size_t lead = leading_index(flats.front());
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const std::size_t other = leading_index(flats[k]);
    if (other != lead) {
      result.status = LiftStatus::unlucky_prime;
      result.prime = other > lead ? runs[k].p : runs.front().p;
      result.message = "normalization disagrees modulo " + std::to_string(result.prime);
      return result;
    }
  }

  BigInt modulus = 1;
  std::vector<BigInt> combined = flats.front();
  modulus = static_cast<unsigned long>(runs.front().p);
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const BigInt p = static_cast<unsigned long>(runs[k].p);
    BigInt inv_mod;
    mpz_invert(inv_mod.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = 0; i < unknowns; ++i) {
      BigInt delta = (flats[k][i] - combined[i]) * inv_mod;
      mpz_fdiv_r(delta.get_mpz_t(), delta.get_mpz_t(), p.get_mpz_t());
      combined[i] += modulus * delta;
    }
    modulus *= p;
  }

  std::vector<BigInt> nums(unknowns);
  BigInt denom_lcm = 1;
  std::vector<BigInt> dens(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) {
    auto q = rational_reconstruct(combined[i], modulus);
    if (!q) {
      result.status = LiftStatus::verification_failed;
      result.message = "rational reconstruction failed; supply more primes";
      return result;
    }
    nums[i] = q->first;
    dens[i] = q->second;
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), q->second.get_mpz_t());
  }
  std::vector<std::vector<BigInt>> coeffs(static_cast<std::size_t>(order) + 1,
                                          std::vector<BigInt>(width));
  for (std::size_t i = 0; i < unknowns; ++i) {
    coeffs[i / width][i % width] = nums[i] * (denom_lcm / dens[i]);
  }
  Recurrence rec(std::move(coeffs));
  const auto report = verify_recurrence(rec, exact);
  if (!report.holds) {
    result.status = LiftStatus::verification_failed;
    result.message = "candidate fails at n=" + std::to_string(*report.first_failing_n);
    return result;
  }
  result.status = LiftStatus::lifted;
  result.recurrence = std::move(rec);
  return result;
}

}  // namespace rrsyt
