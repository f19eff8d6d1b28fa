#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rainbow/coloring.hpp"

namespace rainbow {

/// Largest t*n accepted by the search entry points.
inline constexpr std::int64_t kSearchGuard = 200;

struct SearchConfig {
  std::uint64_t node_budget = 1'000'000'000;
  /// Wall-clock limit in seconds; <= 0 disables it. A time cutoff is never
  /// reproducible, so deterministic runs should rely on node_budget.
  double time_budget = 600.0;
  int parallel_width = 1;
  /// When set, the result (witness, node count, examined count) does not
  /// depend on parallel_width or scheduling.
  bool deterministic = true;
};

void check_config(const SearchConfig& cfg);

struct SearchStats {
  /// Color assignments made, counted as if the tree were walked sequentially.
  std::uint64_t nodes = 0;
  /// Canonical colorings accounted for: full leaves plus every canonical
  /// completion of a pruned partial coloring. Saturates at UINT64_MAX.
  std::uint64_t canonical_colorings_examined = 0;
  double elapsed_seconds = 0.0;
};

struct SearchOutcome {
  std::optional<Coloring> witness;
  bool budget_exhausted = false;
  SearchStats stats;
};

/// Backtracking over canonical equinumerous colorings of [t*n], pruning any
/// branch that completes a rainbow AP(k). Returns the lexicographically
/// smallest canonical rainbow-free coloring (deterministic mode), or none.
/// Absence proves non-existence only when budget_exhausted is false.
SearchOutcome search_rainbow_free(int k, int t, int n, const SearchConfig& cfg = {});

enum class VerificationStatus { all_contain_rainbow, counterexample_found, budget_exhausted };

std::string to_string(VerificationStatus status);

struct VerificationResult {
  int k = 3;
  int t = 1;
  int n = 1;
  VerificationStatus status = VerificationStatus::budget_exhausted;
  std::uint64_t canonical_colorings_examined = 0;
  std::optional<Coloring> counterexample;
  SearchStats stats;
};

VerificationResult verify_all(int k, int t, int n, const SearchConfig& cfg = {});

/// Number of canonical colorings consistent with a partial canonical
/// assignment: `remaining_positions` free cells, per-introduced-color spare
/// capacity, and `unused_colors` colors not yet placed (n cells each).
/// Saturates at UINT64_MAX.
std::uint64_t count_canonical_completions(std::int64_t remaining_positions,
                                          const std::vector<int>& spare_capacity,
                                          int unused_colors, int n);

/// (t*n)! / ((n!)^t * t!), saturating.
std::uint64_t count_canonical_colorings(int t, int n);

struct WitnessRecord {
  int k = 3;
  int t = 1;
  int n = 1;
  Coloring coloring;
  bool verified = false;
  std::string discovered_at;  // ISO-8601 UTC
  SearchStats search_stats;
};

/// Independent re-check through the coloring model: equinumerous with
/// parameters (t, n) and no rainbow AP(k).
bool verify_witness(const Coloring& coloring, int k, int t, int n);

enum class FactStatus { witness_found, no_witness, budget_exhausted };

std::string to_string(FactStatus status);

struct ScanFact {
  int t = 1;
  int n = 1;
  FactStatus status = FactStatus::budget_exhausted;
  std::optional<WitnessRecord> witness;
  SearchStats stats;
};

struct ScanReport {
  int k = 3;
  std::vector<ScanFact> facts;
  /// Values t for which "T_k > t" is justified by this scan: every t' <= t is
  /// either < k (pigeonhole) or has a verified witness here.
  std::vector<int> refuted_up_to;
};

/// For every t in t_values and n = 1..n_max, search for a rainbow-free
/// coloring. Witnesses are re-verified independently; when `store_path` is
/// set, each verified witness is appended to that JSON-lines file.
ScanReport scan_tk_facts(int k, const std::set<int>& t_values, int n_max,
                         const SearchConfig& cfg,
                         const std::optional<std::string>& store_path = std::nullopt);

// JSON views. `include_timing` = false drops wall-clock fields so that
// deterministic runs serialise byte-identically.
nlohmann::json to_json(const SearchStats& stats, bool include_timing);
nlohmann::json to_json(const SearchOutcome& outcome, int k, int t, int n, bool include_timing);
nlohmann::json to_json(const VerificationResult& result, bool include_timing);
nlohmann::json to_json(const ScanReport& report, bool include_timing);
nlohmann::json to_json(const WitnessRecord& record);
WitnessRecord witness_from_json(const nlohmann::json& doc);

/// Append-only JSON-lines witness store, one record per line.
class WitnessStore {
 public:
  explicit WitnessStore(std::string path) : path_(std::move(path)) {}

  void append(const WitnessRecord& record) const;
  [[nodiscard]] std::vector<WitnessRecord> load() const;
  [[nodiscard]] std::vector<WitnessRecord> find(int k, int t, int n) const;
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

std::string utc_timestamp();

}  // namespace rainbow
