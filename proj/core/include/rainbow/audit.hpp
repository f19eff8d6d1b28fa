#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rainbow/coloring.hpp"
#include "rainbow/matrix.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

inline constexpr std::int64_t kAuditGuard = 10'000;
/// Up to this t*n every same-color pair is checked; above it pairs are sampled.
inline constexpr std::int64_t kAuditAllPairsLimit = 300;
inline constexpr std::size_t kAuditPairSamplesPerColor = 20'000;

/// Index range [first, last] (1-based, inclusive) of one block of a color class.
struct Block {
  int first = 1;
  int last = 1;
  [[nodiscard]] int size() const noexcept { return last - first + 1; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Positions a_1 < ... < a_n of one color, with gap and block structure.
struct ColorClassProfile {
  Color color = 0;
  int k = 3;
  std::int64_t wide_threshold = 1;
  std::vector<std::int64_t> positions;
  std::vector<std::int64_t> gaps;         // gaps[j-1] = a_{j+1} - a_j
  std::vector<int> wide_gap_indices;      // 1-based j with a_{j+1} - a_j > W
  std::vector<Block> blocks;              // runs of k consecutive indices
  std::vector<bool> wide_block_flags;     // block holds both ends of a wide gap

  friend bool operator==(const ColorClassProfile&, const ColorClassProfile&) = default;
};

ColorClassProfile profile_color_class(const Coloring& c, Color color, int k,
                                      std::int64_t wide_threshold);

/// (k-1) x |block s| matrix; entry (x, y) is 1 iff r = (s-1)k + y > j and
/// x divides a_r - a_j. Both j and s are 1-based.
BinaryMatrix build_divisibility_matrix(const ColorClassProfile& profile, int j, int s);

enum class Relation { less_equal, greater_equal, equal, less };

std::string to_string(Relation relation);

/// One audited inequality. When several instances are checked under the same
/// name, lhs/rhs hold the tightest one (or the first violation).
struct AuditCheck {
  std::string name;
  Relation relation = Relation::less_equal;
  Rational lhs;
  Rational rhs;
  /// Set for bounds that are only available in floating point (KST); such
  /// checks are always informational.
  std::optional<double> rhs_real;
  bool pass = true;
  bool informational = false;
  std::uint64_t instances = 0;
  std::string detail;
};

/// Ones count and column-pair overlap of one A^s.
struct MatrixStat {
  Color color = 0;
  int j = 1;
  int s = 1;
  std::int64_t ones = 0;
  int max_common_rows = 0;
};

struct AuditReport {
  int k = 3;
  int t = 1;
  int n = 1;
  std::int64_t wide_threshold = 1;
  std::vector<AuditCheck> checks;
  bool pass = true;  // every non-informational check passes
  std::vector<ColorClassProfile> profiles;
  /// Per-(color, j, s) statistics; only kept when t*n <= kAuditAllPairsLimit.
  std::vector<MatrixStat> matrix_stats;
  std::uint64_t matrices_built = 0;

  [[nodiscard]] const AuditCheck* find(const std::string& name) const;
};

/// k^8, saturated to INT64_MAX.
std::int64_t default_wide_threshold(int k);

/// Rebuilds every finite object of the divisor/KST argument on `c` and
/// checks each inequality of the chain with exact arithmetic.
AuditReport audit_proof_chain(const Coloring& c, int k, std::int64_t wide_threshold,
                           std::uint64_t sample_seed = 0);

nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const ColorClassProfile& profile);

}  // namespace rainbow
