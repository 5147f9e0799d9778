#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "rrsyt/asympt.hpp"
#include "rrsyt/count.hpp"
#include "rrsyt/reclab.hpp"
#include "rrsyt/restrict.hpp"
#include "rrsyt/sequence.hpp"

namespace rrsyt {

// Problem specification:
//   {"rows": k,
//    "restrictions": [{"finite": [...], "progressions": [{"first": a, "step": d}]}, ...],
//    "arithmetic": "exact" | {"mod": p}}
// Unknown fields are rejected.
Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& problem);
Problem load_problem(const std::filesystem::path& path);

nlohmann::json runset_to_json(const RunSet& rs);
RunSet runset_from_json(const nlohmann::json& j);

/// Stable 64-bit FNV-1a hash of the canonical problem JSON, as 16 hex digits.
std::string problem_hash(const Problem& problem);

// OEIS b-file: one "n value" line per term, single space separated.
void write_bfile(std::ostream& os, const TermSequence& seq);
/// Reads exact terms; '#' comment lines and blank lines are skipped and the
/// indices must be consecutive.
TermSequence read_bfile(std::istream& is);
TermSequence read_bfile(const std::filesystem::path& path);

nlohmann::json sequence_to_json(const TermSequence& seq);
nlohmann::json recurrence_to_json(const Recurrence& rec);
nlohmann::json certificate_to_json(const Certificate& cert);
nlohmann::json growth_to_json(const GrowthEstimate& est);

/// One file per (problem hash, arithmetic) holding a JSON header line and
/// "n value" lines. Writes go to a temporary file that is then renamed.
class TermCache {
 public:
  explicit TermCache(std::filesystem::path directory);

  std::filesystem::path path_for(const Problem& problem) const;

  /// Cached terms, or nullopt when there is no file or its header belongs to
  /// another problem or engine version. Throws CacheError on corrupt data.
  std::optional<TermSequence> load(const Problem& problem) const;
  void store(const Problem& problem, const TermSequence& seq) const;

 private:
  std::filesystem::path directory_;
};

/// diagonal_sequence with the cache in front: returns cached terms when they
/// suffice, otherwise recomputes, checks the recomputed prefix against the
/// cache and checkpoints new terms every `checkpoint_every` terms.
TermSequence cached_diagonal_sequence(const Problem& problem, int n_max, const TermCache* cache,
                                      const DiagonalOptions& options = {},
                                      int checkpoint_every = 64);

}  // namespace rrsyt
