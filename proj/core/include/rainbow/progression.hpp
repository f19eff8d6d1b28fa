#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rainbow/rational.hpp"

namespace rainbow {

/// x, x+d, ..., x+(k-1)d with x >= 1 and d >= 1, positions 1-indexed.
struct ArithmeticProgression {
  std::int64_t first = 1;
  std::int64_t diff = 1;
  int length = 3;

  [[nodiscard]] constexpr std::int64_t term(int i) const noexcept { return first + i * diff; }
  [[nodiscard]] constexpr std::int64_t last() const noexcept { return term(length - 1); }

  friend constexpr bool operator==(const ArithmeticProgression&,
                                   const ArithmeticProgression&) = default;
};

/// Throws std::invalid_argument unless first >= 1, diff >= 1, length >= 3.
void check_progression(const ArithmeticProgression& ap);

/// m = a(k-1) + b with 0 <= b < k-1, and the closed-form AP(k) count in [m].
struct ApCountDecomposition {
  std::int64_t m = 0;
  int k = 3;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::uint64_t count = 0;
};

inline constexpr std::int64_t kEnumerationGuard = 1'000'000;
/// Largest number of progressions enumerate_aps will materialise.
inline constexpr std::uint64_t kEnumerationSizeGuard = 50'000'000;
inline constexpr std::int64_t kFormulaGuard = std::int64_t{1} << 31;

/// All AP(k) in [m] sorted by (diff, first). Throws GuardViolation above
/// kEnumerationGuard or when the result would exceed kEnumerationSizeGuard.
std::vector<ArithmeticProgression> enumerate_aps(std::int64_t m, int k);

/// Visits AP(k) in [m] in (diff, first) order without materialising them.
/// Same m guard as enumerate_aps; no size guard.
void for_each_ap(std::int64_t m, int k,
                 const std::function<void(const ArithmeticProgression&)>& visit);

ApCountDecomposition decompose_ap_count(std::int64_t m, int k);

/// b*C(a+1,2) + (k-1-b)*C(a,2); 0 when m < k.
std::uint64_t count_aps_formula(std::int64_t m, int k);

/// m(m - 3(k-1)) / (2(k-1)), exact; may be negative.
Rational ap_count_lower_bound(std::int64_t m, int k);

/// Number of AP(k) inside [m] having both x and y (x < y) as terms.
std::uint64_t count_aps_through_pair(std::int64_t x, std::int64_t y, int k, std::int64_t m);

/// Calls visit(first, diff) for each AP(k) in [m] through x < y; at most C(k,2) calls.
void for_each_ap_through_pair(std::int64_t x, std::int64_t y, int k, std::int64_t m,
                              const std::function<void(std::int64_t, std::int64_t)>& visit);

/// C(n, 2) in 64 bits.
constexpr std::uint64_t choose2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace rainbow
