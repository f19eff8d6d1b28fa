#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rainbow/matrix.hpp"

namespace rainbow {

/// Comparisons of an integer against kst_bound add this slack, so a bound
/// that is mathematically an integer never fails on rounding.
inline constexpr double kKstSlack = 1e-9;

inline constexpr int kExhaustiveCellGuard = 36;
inline constexpr int kBranchAndBoundSideGuard = 12;

/// (s-1)^(1/t) (n-t+1) m^(1-1/t) + (t-1) m. An upper bound on
/// ex(m, n, R_{s,t}) for m, n, s, t >= 2; throws std::invalid_argument otherwise.
double kst_bound(int m, int n, int s, int t);

enum class ZarankiewiczBackend {
  automatic,         // branch-and-bound when s == 2 or t == 2 fits, else exhaustive
  exhaustive,        // m*n <= 36, any s, t
  branch_and_bound,  // s == 2 or t == 2, m, n <= 12
};

struct ExtremalResult {
  int m = 0;
  int n = 0;
  int s = 0;
  int t = 0;
  std::int64_t exact_value = 0;
  /// Only meaningful when s, t >= 2 (and m, n >= 2).
  std::optional<double> kst_upper;
  BinaryMatrix witness;  // canonical form, avoids R_{s,t}, exact_value ones
  std::uint64_t nodes = 0;
};

/// Maximum number of ones in an m x n 0-1 matrix avoiding R_{s,t}.
/// Throws GuardViolation when the chosen backend's domain is exceeded.
ExtremalResult exact_zarankiewicz(int m, int n, int s, int t,
                                  ZarankiewiczBackend backend = ZarankiewiczBackend::automatic);

nlohmann::json to_json(const ExtremalResult& result);

}  // namespace rainbow
