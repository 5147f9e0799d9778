#include "rrsyt/formats.hpp"

#include <fstream>
#include <sstream>

#include "rrsyt/errors.hpp"

namespace rrsyt {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw InvalidInput(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InvalidInput("unknown field '" + key + "' in " + where);
  }
}

std::int64_t positive_int(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) {
    throw InvalidInput(std::string(what) + " must be a positive integer");
  }
  return j.get<std::int64_t>();
}

}  // namespace

RunSet runset_from_json(const json& j) {
  reject_unknown(j, {"finite", "progressions"}, "restriction");
  std::vector<std::int64_t> finite;
  std::vector<Progression> progs;
  if (j.contains("finite")) {
    if (!j["finite"].is_array()) throw InvalidInput("'finite' must be an array");
    for (const auto& v : j["finite"]) finite.push_back(positive_int(v, "run length"));
  }
  if (j.contains("progressions")) {
    if (!j["progressions"].is_array()) throw InvalidInput("'progressions' must be an array");
    for (const auto& p : j["progressions"]) {
      reject_unknown(p, {"first", "step"}, "progression");
      if (!p.contains("first") || !p.contains("step")) {
        throw InvalidInput("progression needs 'first' and 'step'");
      }
      progs.push_back({positive_int(p["first"], "first"), positive_int(p["step"], "step")});
    }
  }
  return RunSet(std::move(finite), std::move(progs));
}

json runset_to_json(const RunSet& rs) {
  json progs = json::array();
  for (const auto& p : rs.progressions()) progs.push_back({{"first", p.first}, {"step", p.step}});
  return {{"finite", rs.finite()}, {"progressions", progs}};
}

Problem problem_from_json(const json& j) {
  reject_unknown(j, {"rows", "restrictions", "arithmetic"}, "problem");
  if (!j.contains("rows") || !j.contains("restrictions")) {
    throw InvalidInput("problem needs 'rows' and 'restrictions'");
  }
  Problem problem;
  problem.rows = static_cast<int>(positive_int(j["rows"], "rows"));
  if (!j["restrictions"].is_array()) throw InvalidInput("'restrictions' must be an array");
  for (const auto& r : j["restrictions"]) problem.restrictions.push_back(runset_from_json(r));
  if (j.contains("arithmetic")) {
    const auto& a = j["arithmetic"];
    if (a.is_string() && a.get<std::string>() == "exact") {
      problem.arithmetic = Arithmetic::exact();
    } else if (a.is_object()) {
      reject_unknown(a, {"mod"}, "arithmetic");
      if (!a.contains("mod")) throw InvalidInput("arithmetic object needs 'mod'");
      problem.arithmetic = Arithmetic::modular(static_cast<std::uint64_t>(positive_int(a["mod"], "mod")));
    } else {
      throw InvalidInput("arithmetic must be \"exact\" or {\"mod\": p}");
    }
  }
  problem.validate();
  return problem;
}

json problem_to_json(const Problem& problem) {
  json restrictions = json::array();
  for (const auto& r : problem.restrictions) restrictions.push_back(runset_to_json(r));
  json arithmetic = problem.arithmetic.is_exact() ? json("exact")
                                                  : json{{"mod", problem.arithmetic.prime()}};
  return {{"rows", problem.rows}, {"restrictions", restrictions}, {"arithmetic", arithmetic}};
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open problem file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("malformed problem file " + path.string() + ": " + e.what());
  }
  return problem_from_json(j);
}

namespace {

// Equivalent run-set descriptions share one canonical form, so they also share
// a hash and a cache file.
Problem canonical_problem(const Problem& problem) {
  Problem out = problem;
  for (auto& r : out.restrictions) r = r.canonicalized();
  return out;
}

}  // namespace

std::string problem_hash(const Problem& problem) {
  const std::string text = problem_to_json(canonical_problem(problem)).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_bfile(std::ostream& os, const TermSequence& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    os << seq.offset() + static_cast<std::int64_t>(i) << ' ' << seq.value_string(i) << '\n';
  }
}

TermSequence read_bfile(std::istream& is) {
  std::string line;
  std::vector<BigInt> values;
  std::int64_t offset = 0;
  std::int64_t expect = 0;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string n_text, v_text, extra;
    if (!(fields >> n_text >> v_text) || (fields >> extra)) {
      throw InvalidInput("b-file line " + std::to_string(lineno) + ": expected 'n value'");
    }
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(n_text, &used);
      if (used != n_text.size()) throw std::invalid_argument(n_text);
    } catch (const std::exception&) {
      throw InvalidInput("b-file line " + std::to_string(lineno) + ": bad index '" + n_text + "'");
    }
    if (values.empty()) {
      offset = n;
    } else if (n != expect) {
      throw InvalidInput("b-file line " + std::to_string(lineno) + ": expected index " +
                         std::to_string(expect) + ", got " + std::to_string(n));
    }
    expect = n + 1;
    values.push_back(parse_bigint(v_text));
  }
  return TermSequence::exact(offset, std::move(values));
}

TermSequence read_bfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open b-file " + path.string());
  return read_bfile(in);
}

json sequence_to_json(const TermSequence& seq) {
  json values = json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) values.push_back(seq.value_string(i));
  json out = {{"offset", seq.offset()}, {"values", values}};
  out["arithmetic"] = seq.is_exact() ? json("exact") : json{{"mod", seq.prime()}};
  return out;
}

json recurrence_to_json(const Recurrence& rec) {
  json coeffs = json::array();
  for (const auto& poly : rec.coeffs()) {
    json row = json::array();
    for (const auto& c : poly) {
      if (c.fits_slong_p()) {
        row.push_back(c.get_si());
      } else {
        row.push_back(to_string(c));
      }
    }
    coeffs.push_back(row);
  }
  json out = {{"order", rec.order()}, {"degree", rec.degree()}, {"coefficients", coeffs},
              {"text", rec.to_string()}};
  out["prime"] = rec.is_integer() ? json(nullptr) : json(rec.prime());
  return out;
}

json certificate_to_json(const Certificate& cert) {
  json ruled = json::array();
  for (const auto& c : cert.ruled_out) ruled.push_back({c.order, c.degree});
  json nonempty = json::array();
  for (const auto& [c, k] : cert.nonempty) {
    nonempty.push_back({{"L", c.order}, {"d", c.degree}, {"nullity", k}});
  }
  json survivors = json::array();
  for (const auto& s : cert.survivors) {
    json entry = recurrence_to_json(s.recurrence);
    entry["L"] = s.cell.order;
    entry["d"] = s.cell.degree;
    entry["verified"] = s.verification.holds;
    entry["windows_checked"] = s.verification.windows_checked;
    entry["first_failing_n"] =
        s.verification.first_failing_n ? json(*s.verification.first_failing_n) : json(nullptr);
    survivors.push_back(entry);
  }
  return {{"prime", cert.prime},
          {"N", cert.terms_used},
          {"margin", cert.margin},
          {"budget", cert.budget},
          {"certified_K", cert.certified_k},
          {"ruled_out", ruled},
          {"solved_cells", cert.solved.size()},
          {"nonempty", nonempty},
          {"survivors", survivors},
          {"unchecked_cells", cert.unchecked}};
}

json growth_to_json(const GrowthEstimate& est) {
  const auto mu = match_constant(est.mu, default_base_candidates());
  const auto theta = match_constant(est.theta, default_exponent_candidates());
  return {{"mu", est.mu},
          {"theta", est.theta},
          {"c", est.c},
          {"n_used", est.n_used},
          {"accel_order", est.accel_order},
          {"stability", {{"mu", est.mu_spread}, {"theta", est.theta_spread}, {"c", est.c_spread}}},
          {"matched",
           {{"mu", {{"name", mu.best.name}, {"residual", mu.residual}}},
            {"theta", {{"name", theta.best.name}, {"residual", theta.residual}}}}}};
}

TermCache::TermCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path TermCache::path_for(const Problem& problem) const {
  const std::string arith =
      problem.arithmetic.is_exact() ? "exact" : "mod" + std::to_string(problem.arithmetic.prime());
  return directory_ / (problem_hash(problem) + "-" + arith + ".terms");
}

namespace {

json cache_header(const Problem& problem) {
  return {{"problem", problem_to_json(canonical_problem(problem))},
          {"prime", problem.arithmetic.is_exact() ? json(nullptr) : json(problem.arithmetic.prime())},
          {"engine_version", kEngineVersion},
          {"hash", problem_hash(problem)}};
}

}  // namespace

std::optional<TermSequence> TermCache::load(const Problem& problem) const {
  const auto path = path_for(problem);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string header_line;
  if (!std::getline(in, header_line)) return std::nullopt;
  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::exception&) {
    throw CacheError("corrupt cache header in " + path.string());
  }
  if (header != cache_header(problem)) return std::nullopt;
  TermSequence exact;
  try {
    exact = read_bfile(in);
  } catch (const InvalidInput& e) {
    throw CacheError("corrupt cache body in " + path.string() + ": " + e.what());
  }
  if (!exact.empty() && exact.offset() != 0) throw CacheError("cache must start at n=0: " + path.string());
  if (problem.arithmetic.is_exact()) return exact;
  std::vector<std::uint64_t> residues;
  for (const auto& v : exact.values()) {
    if (v >= problem.arithmetic.prime()) throw CacheError("residue out of range in " + path.string());
    residues.push_back(v.get_ui());
  }
  return TermSequence::modular(0, problem.arithmetic.prime(), std::move(residues));
}

void TermCache::store(const Problem& problem, const TermSequence& seq) const {
  std::filesystem::create_directories(directory_);
  const auto path = path_for(problem);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << cache_header(problem).dump() << '\n';
    write_bfile(out, seq);
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TermSequence cached_diagonal_sequence(const Problem& problem, int n_max, const TermCache* cache,
                                      const DiagonalOptions& options, int checkpoint_every) {
  problem.validate();
  std::optional<TermSequence> known;
  if (cache) known = cache->load(problem);
  if (known && known->size() > static_cast<std::size_t>(n_max)) {
    return known->prefix(static_cast<std::size_t>(n_max) + 1);
  }

  // Recompute from scratch; cached terms are cross-checked as they reappear.
  std::vector<std::string> fresh;
  DiagonalOptions opts = options;
  opts.on_term = [&](std::int64_t n, const std::string& value) {
    const auto idx = static_cast<std::size_t>(n);
    if (known && idx < known->size() && known->value_string(idx) != value) {
      throw CacheError("cached term n=" + std::to_string(n) + " disagrees with recomputation");
    }
    fresh.push_back(value);
    if (cache && checkpoint_every > 0 && (n + 1) % checkpoint_every == 0 &&
        (!known || fresh.size() > known->size())) {
      std::vector<BigInt> vals;
      for (const auto& s : fresh) vals.push_back(parse_bigint(s));
      auto partial = TermSequence::exact(0, std::move(vals));
      cache->store(problem, problem.arithmetic.is_exact() ? partial : partial.reduce(problem.arithmetic.prime()));
    }
    if (options.on_term) options.on_term(n, value);
  };
  auto seq = diagonal_sequence(problem, n_max, opts);
  if (cache && (!known || seq.size() > known->size())) cache->store(problem, seq);
  return seq;
}

}  // namespace rrsyt
