#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rrsyt/asympt.hpp"
#include "rrsyt/count.hpp"
#include "rrsyt/errors.hpp"
#include "rrsyt/formats.hpp"
#include "rrsyt/freewalk.hpp"
#include "rrsyt/reclab.hpp"

using namespace rrsyt;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string preset;
  int rows = 0;
  bool empty = false;
  std::string problem_file;
  bool exact = false;
  std::uint64_t mod = 0;
  int n_max = -1;
  std::string format = "text";
  std::optional<std::int64_t> offset;
  std::string cache_dir;
  unsigned threads = 1;
  std::string file;
  int order = 1;
  int degree = 1;
  int budget = -1;
  std::size_t margin = kDefaultMargin;
  int depth = 4;
  int degree_cap = 10;
  std::string shape;
};

enum class DefaultArith { exact, modular };

void add_problem_options(CLI::App* cmd, Config& cfg) {
  auto* preset = cmd->add_option("--preset", cfg.preset, "G, H or unrestricted-<k>");
  auto* rows = cmd->add_option("--rows", cfg.rows, "number of rows (with --empty)")->check(CLI::PositiveNumber);
  auto* empty = cmd->add_flag("--empty", cfg.empty, "no run-length restrictions");
  auto* problem = cmd->add_option("--problem", cfg.problem_file, "problem specification JSON")
                      ->check(CLI::ExistingFile);
  preset->excludes(rows)->excludes(empty)->excludes(problem);
  problem->excludes(rows)->excludes(empty);
  empty->needs(rows);
  auto* exact = cmd->add_flag("--exact", cfg.exact, "arbitrary precision arithmetic");
  auto* mod = cmd->add_option("--mod", cfg.mod, "arithmetic modulo this prime");
  exact->excludes(mod);
  mod->excludes(exact);
  cmd->add_option("--cache-dir", cfg.cache_dir, "term cache directory")->envname("RRSYT_CACHE_DIR");
  cmd->add_option("--threads", cfg.threads, "worker threads")->envname("RRSYT_THREADS")->check(CLI::PositiveNumber);
}

void add_format_option(CLI::App* cmd, Config& cfg, std::vector<std::string> allowed) {
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(std::move(allowed)));
}

bool has_problem(const Config& cfg) { return !cfg.preset.empty() || cfg.rows > 0 || !cfg.problem_file.empty(); }

bool is_named_preset(const Config& cfg) { return cfg.preset == "G" || cfg.preset == "H"; }

Problem resolve_problem(const Config& cfg, DefaultArith fallback) {
  Problem p;
  if (cfg.preset == "G") {
    p = Problem::preset_g();
  } else if (cfg.preset == "H") {
    p = Problem::preset_h();
  } else if (cfg.preset.rfind("unrestricted-", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(cfg.preset.substr(13), &used);
      if (used != cfg.preset.size() - 13) k = 0;
    } catch (const std::exception&) {
    }
    if (k < 1) throw UsageError("bad preset '" + cfg.preset + "'");
    p = Problem::unrestricted(k);
  } else if (!cfg.preset.empty()) {
    throw UsageError("unknown preset '" + cfg.preset + "'; use G, H or unrestricted-<k>");
  } else if (!cfg.problem_file.empty()) {
    p = load_problem(cfg.problem_file);
  } else if (cfg.rows > 0) {
    if (!cfg.empty) throw UsageError("--rows needs --empty");
    p = Problem::unrestricted(cfg.rows);
  } else {
    throw UsageError("no problem given; use --preset, --rows/--empty or --problem");
  }
  if (cfg.exact) {
    p.arithmetic = Arithmetic::exact();
  } else if (cfg.mod != 0) {
    p.arithmetic = Arithmetic::modular(cfg.mod);
  } else if (cfg.problem_file.empty()) {
    p.arithmetic = fallback == DefaultArith::exact ? Arithmetic::exact() : Arithmetic::modular();
  }
  return p;
}

std::int64_t output_offset(const Config& cfg) {
  if (cfg.offset) return *cfg.offset;
  return is_named_preset(cfg) ? 1 : 0;
}

// Terms from --file or computed for the problem, starting at the output offset.
TermSequence obtain_terms(const Config& cfg, DefaultArith fallback, int default_nmax) {
  if (!cfg.file.empty()) {
    if (has_problem(cfg)) throw UsageError("--file cannot be combined with a problem");
    auto seq = read_bfile(cfg.file);
    if (cfg.offset) seq = seq.starting_at(*cfg.offset);
    if (cfg.mod != 0) return seq.reduce(cfg.mod);
    return seq;
  }
  const Problem p = resolve_problem(cfg, fallback);
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : default_nmax;
  std::optional<TermCache> cache;
  if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
  const auto seq = cached_diagonal_sequence(p, n_max, cache ? &*cache : nullptr);
  const auto offset = output_offset(cfg);
  if (offset > n_max) throw UsageError("offset " + std::to_string(offset) + " is beyond --nmax");
  return seq.starting_at(offset);
}

TermSequence as_modular(const TermSequence& seq, std::uint64_t fallback_prime) {
  return seq.is_exact() ? seq.reduce(fallback_prime) : seq;
}

std::vector<int> parse_parts(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad shape '" + text + "'; expected e.g. 3,3,2");
    }
  }
  return parts;
}

int cmd_count(const Config& cfg) {
  const Shape shape(parse_parts(cfg.shape));
  Problem p = has_problem(cfg) ? resolve_problem(cfg, DefaultArith::exact) : Problem::unrestricted(shape.rows());
  if (!has_problem(cfg) && cfg.mod != 0) p.arithmetic = Arithmetic::modular(cfg.mod);
  if (shape.rows() > p.rows) {
    throw InvalidInput("shape has " + std::to_string(shape.rows()) + " rows, problem has " + std::to_string(p.rows));
  }
  // A shape with fewer rows uses the first restrictions.
  const std::span<const RunSet> rs(p.restrictions.data(), static_cast<std::size_t>(shape.rows()));
  const std::string value = p.arithmetic.is_exact() ? to_string(count_restricted(shape, rs))
                                                    : std::to_string(count_restricted_mod(shape, rs, p.arithmetic));
  if (cfg.format == "json") {
    json j = {{"shape", shape.parts()}, {"count", value}};
    j["arithmetic"] = p.arithmetic.is_exact() ? json("exact") : json{{"mod", p.arithmetic.prime()}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << value << '\n';
  }
  return 0;
}

void emit_sequence(const TermSequence& seq, const std::string& format) {
  if (format == "json") {
    std::cout << sequence_to_json(seq).dump(2) << '\n';
  } else if (format == "bfile") {
    write_bfile(std::cout, seq);
  } else {
    for (std::size_t i = 0; i < seq.size(); ++i) std::cout << (i ? ", " : "") << seq.value_string(i);
    std::cout << '\n';
  }
}

int cmd_seq(const Config& cfg) {
  if (cfg.n_max < 0) throw UsageError("seq needs --nmax");
  emit_sequence(obtain_terms(cfg, DefaultArith::exact, cfg.n_max), cfg.format);
  return 0;
}

int cmd_guess(const Config& cfg) {
  const auto terms = obtain_terms(cfg, DefaultArith::modular, 200);
  const std::uint64_t prime = cfg.mod != 0 ? cfg.mod : Arithmetic::kDefaultPrime;
  const auto basis = guess_recurrence(as_modular(terms, prime), cfg.order, cfg.degree, cfg.margin);

  std::optional<LiftResult> lifted;
  if (terms.is_exact() && basis.size() == 1) {
    auto primes = default_primes(3);
    if (cfg.mod != 0) primes.insert(primes.begin(), cfg.mod);
    lifted = lift_recurrence(terms, cfg.order, cfg.degree, primes, cfg.margin);
  }

  if (cfg.format == "json") {
    json j = {{"L", cfg.order}, {"d", cfg.degree}, {"prime", basis.empty() ? prime : basis.front().prime()},
              {"N", terms.size()}, {"margin", cfg.margin}};
    j["basis"] = json::array();
    for (const auto& r : basis) j["basis"].push_back(recurrence_to_json(r));
    if (lifted && lifted->recurrence) {
      j["integer"] = recurrence_to_json(*lifted->recurrence);
      j["verified"] = verify_recurrence(*lifted->recurrence, terms).holds;
    } else {
      j["integer"] = nullptr;
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "order " << cfg.order << ", degree " << cfg.degree << ", " << terms.size() << " terms\n";
  if (basis.empty()) {
    std::cout << "no recurrence of this order and degree\n";
    return 0;
  }
  if (lifted && lifted->recurrence) {
    std::cout << lifted->recurrence->to_string() << '\n';
    std::cout << "verified exactly on all " << terms.size() << " terms\n";
    return 0;
  }
  if (lifted) std::cout << "integer lift failed: " << lifted->message << '\n';
  std::cout << "solution space of dimension " << basis.size() << ":\n";
  for (const auto& r : basis) std::cout << "  " << r.to_string() << '\n';
  return 0;
}

int cmd_certify(const Config& cfg) {
  const auto terms = as_modular(obtain_terms(cfg, DefaultArith::modular, 700),
                                cfg.mod != 0 ? cfg.mod : Arithmetic::kDefaultPrime);
  const int budget = cfg.budget >= 0 ? cfg.budget : max_certifiable_budget(terms.size(), cfg.margin);
  CertifyOptions opts;
  opts.margin = cfg.margin;
  opts.threads = cfg.threads;
  const auto cert = certify_absence(terms, budget, opts);
  if (cfg.format == "json") {
    std::cout << certificate_to_json(cert).dump(2) << '\n';
    return 0;
  }
  std::cout << "prime " << cert.prime << ", N = " << cert.terms_used << ", margin " << cert.margin << ", budget K = "
            << cert.budget << '\n';
  std::cout << cert.ruled_out.size() << " cells ruled out (" << cert.solved.size() << " systems eliminated)\n";
  if (cert.unchecked > 0) std::cout << cert.unchecked << " cells within the budget lack equations\n";
  if (cert.certified_k >= 0) {
    std::cout << "no recurrence with order <= " << cert.certified_k << " and degree <= " << cert.certified_k
              << " exists\n";
  } else {
    std::cout << "nothing certified\n";
  }
  for (const auto& s : cert.survivors) {
    std::cout << "survivor at (" << s.cell.order << ", " << s.cell.degree << "): " << s.recurrence.to_string()
              << (s.verification.holds ? "  [holds on all terms]" : "  [fails]") << '\n';
  }
  return 0;
}

void print_table(const ExtrapolationTable& t) {
  std::cout << t.name << '\n' << std::setw(8) << "n";
  const std::size_t depth = t.depth.empty() ? 0 : t.depth.front().size();
  for (std::size_t m = 0; m < depth; ++m) std::cout << std::setw(20) << ("depth " + std::to_string(m));
  std::cout << '\n';
  for (std::size_t r = 0; r < t.n.size(); ++r) {
    std::cout << std::setw(8) << t.n[r];
    for (double v : t.depth[r]) std::cout << std::setw(20) << std::setprecision(12) << v;
    std::cout << '\n';
  }
}

int cmd_asymp(const Config& cfg) {
  if (cfg.mod != 0) throw UsageError("asymp needs exact terms");
  const auto terms = obtain_terms(cfg, DefaultArith::exact, 400);
  const auto est = estimate_growth(terms, cfg.depth);
  if (cfg.format == "json") {
    std::cout << growth_to_json(est).dump(2) << '\n';
    return 0;
  }
  for (const auto& t : est.tables) {
    print_table(t);
    std::cout << '\n';
  }
  const auto mu = match_constant(est.mu, default_base_candidates());
  const auto theta = match_constant(est.theta, default_exponent_candidates());
  std::cout << "terms used " << est.n_used << ", depth " << est.accel_order << '\n';
  std::cout << "mu    = " << format_estimate(est.mu, est.mu_spread) << "  (nearest " << mu.best.name
            << ", residual " << std::setprecision(3) << mu.residual << ")\n";
  std::cout << "theta = " << format_estimate(est.theta, est.theta_spread) << "  (nearest " << theta.best.name
            << ", residual " << std::setprecision(3) << theta.residual << ")\n";
  std::cout << "C     = " << format_estimate(est.c, est.c_spread) << '\n';
  return 0;
}

std::vector<Exponent> exponents_up_to(int k, int cap) {
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

int cmd_gfcheck(const Config& cfg) {
  const Problem p = resolve_problem(cfg, DefaultArith::exact);
  const auto f = solve_restricted_system(p.rows, p.restrictions, cfg.degree_cap);
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  for (const auto& e : exponents_up_to(p.rows, cfg.degree_cap)) {
    if (f.coefficient(e) != free_walk_count(e, p.restrictions)) ++mismatched;
    ++checked;
  }
  const int m = cfg.degree_cap / p.rows;
  const auto diag = m >= 1 ? series_diagonal(f, m) : TermSequence::exact(0, {BigInt(1)});
  if (cfg.format == "json") {
    json j = {{"rows", p.rows}, {"D", cfg.degree_cap}, {"coefficients_checked", checked},
              {"mismatches", mismatched}, {"diagonal", sequence_to_json(diag)}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << checked << " coefficients up to total degree " << cfg.degree_cap << " checked, " << mismatched
              << " mismatches\n";
    std::cout << "free diagonal:";
    for (std::size_t i = 0; i < diag.size(); ++i) std::cout << (i ? ", " : " ") << diag.value_string(i);
    std::cout << '\n';
  }
  return mismatched == 0 ? 0 : kExitDomain;
}

int cmd_selftest() {
  const std::vector<RunSet> battery = {RunSet(),         RunSet({1}, {}),        RunSet({2}, {}),
                                       RunSet({1, 2}, {}), RunSet({}, {{2, 2}}), RunSet({}, {{3, 2}}),
                                       RunSet({1}, {{3, 3}})};
  int failures = 0;
  auto report = [&](const std::string& name, std::size_t checked, std::size_t bad) {
    std::cout << (bad == 0 ? "ok    " : "FAIL  ") << name << ": " << checked << " checked, " << bad
              << " mismatches\n";
    if (bad) ++failures;
  };

  // Every partition with at most 10 cells and 4 rows.
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int cap) -> void {
    if (!cur.empty()) shapes.push_back(cur);
    if (cur.size() == 4) return;
    for (int part = std::min(left, cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, 10, 10);
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (const auto& parts : shapes) {
    const Shape shape(parts);
    for (const auto& rs : battery) {
      const std::vector<RunSet> family(static_cast<std::size_t>(shape.rows()), rs);
      if (count_restricted(shape, family) != brute_force_count(shape, family)) ++bad;
      ++checked;
    }
  }
  report("oracle equivalence", checked, bad);

  checked = bad = 0;
  for (int k = 2; k <= 5; ++k) {
    const auto seq = diagonal_sequence(Problem::unrestricted(k), 20);
    for (int n = 0; n <= 20; ++n) {
      const auto& v = seq.values()[static_cast<std::size_t>(n)];
      if (v != rect_closed_form(k, n) || v != young_frobenius(Shape::rectangle(k, n))) ++bad;
      ++checked;
    }
  }
  report("closed-form equivalence", checked, bad);

  checked = bad = 0;
  for (auto p : {Problem::preset_g(), Problem::preset_h()}) {
    const auto exact = diagonal_sequence(p, 60);
    p.arithmetic = Arithmetic::modular();
    const auto modular = diagonal_sequence(p, 60);
    bad += modular == exact.reduce(Arithmetic::kDefaultPrime) ? 0 : 1;
    checked += exact.size();
  }
  report("modular consistency", checked, bad);
  return failures == 0 ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run-restricted standard Young tableaux: counts, recurrences and asymptotics"};
  app.require_subcommand(1);
  Config cfg;

  auto* count = app.add_subcommand("count", "count restricted tableaux of one shape");
  add_problem_options(count, cfg);
  count->add_option("--shape", cfg.shape, "shape as comma-separated parts, e.g. 3,3,2")->required();
  add_format_option(count, cfg, {"text", "json"});

  auto* seq = app.add_subcommand("seq", "rectangular diagonal sequence");
  add_problem_options(seq, cfg);
  seq->add_option("--nmax", cfg.n_max, "last index")->check(CLI::NonNegativeNumber);
  seq->add_option("--offset", cfg.offset, "first index to print (default 1 for G and H, else 0)");
  add_format_option(seq, cfg, {"text", "json", "bfile"});

  auto* guess = app.add_subcommand("guess", "guess a recurrence of given order and degree");
  add_problem_options(guess, cfg);
  guess->add_option("--file", cfg.file, "b-file with terms")->check(CLI::ExistingFile);
  guess->add_option("--nmax", cfg.n_max, "last index when computing terms")->check(CLI::NonNegativeNumber);
  guess->add_option("--offset", cfg.offset, "first index used");
  guess->add_option("--L", cfg.order, "order")->check(CLI::NonNegativeNumber);
  guess->add_option("--d", cfg.degree, "degree")->check(CLI::NonNegativeNumber);
  guess->add_option("--margin", cfg.margin, "surplus equations");
  add_format_option(guess, cfg, {"text", "json"});

  auto* certify = app.add_subcommand("certify", "certify absence of recurrences within a budget");
  add_problem_options(certify, cfg);
  certify->add_option("--file", cfg.file, "b-file with terms")->check(CLI::ExistingFile);
  certify->add_option("--nmax", cfg.n_max, "last index when computing terms")->check(CLI::NonNegativeNumber);
  certify->add_option("--offset", cfg.offset, "first index used");
  certify->add_option("--K", cfg.budget, "order and degree budget (default: largest certifiable)")
      ->check(CLI::NonNegativeNumber);
  certify->add_option("--margin", cfg.margin, "surplus equations");
  add_format_option(certify, cfg, {"text", "json"});

  auto* asymp = app.add_subcommand("asymp", "estimate C mu^n n^theta");
  add_problem_options(asymp, cfg);
  asymp->add_option("--file", cfg.file, "b-file with exact terms")->check(CLI::ExistingFile);
  asymp->add_option("--nmax", cfg.n_max, "last index when computing terms")->check(CLI::NonNegativeNumber);
  asymp->add_option("--offset", cfg.offset, "first index used");
  asymp->add_option("--depth", cfg.depth, "Richardson depth")->check(CLI::NonNegativeNumber);
  add_format_option(asymp, cfg, {"text", "json"});

  auto* gfcheck = app.add_subcommand("gfcheck", "check the generating-function system against walk counts");
  add_problem_options(gfcheck, cfg);
  gfcheck->add_option("--D", cfg.degree_cap, "total degree cap")->check(CLI::PositiveNumber);
  add_format_option(gfcheck, cfg, {"text", "json"});

  auto* selftest = app.add_subcommand("selftest", "run the oracle and closed-form batteries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*count) return cmd_count(cfg);
    if (*seq) return cmd_seq(cfg);
    if (*guess) return cmd_guess(cfg);
    if (*certify) return cmd_certify(cfg);
    if (*asymp) return cmd_asymp(cfg);
    if (*gfcheck) return cmd_gfcheck(cfg);
    if (*selftest) return cmd_selftest();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
