#include "rainbow/progression.hpp"

#include <stdexcept>
#include <string>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

void require_k(int k) {
  if (k < 3) throw std::invalid_argument("AP length k must be >= 3, got " + std::to_string(k));
}

void require_m(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1, got " + std::to_string(m));
}

void require_enumerable(std::int64_t m) {
  if (m > kEnumerationGuard) {
    throw GuardViolation("enumeration guard: m = " + std::to_string(m) + " exceeds " +
                         std::to_string(kEnumerationGuard) + "; use count_aps_formula");
  }
}

}  // namespace

void check_progression(const ArithmeticProgression& ap) {
  if (ap.first < 1 || ap.diff < 1 || ap.length < 3) {
    throw std::invalid_argument("invalid progression (first=" + std::to_string(ap.first) +
                                ", diff=" + std::to_string(ap.diff) +
                                ", length=" + std::to_string(ap.length) + ")");
  }
}

void for_each_ap(std::int64_t m, int k,
                 const std::function<void(const ArithmeticProgression&)>& visit) {
  require_m(m);
  require_k(k);
  require_enumerable(m);
  const std::int64_t span = k - 1;
  for (std::int64_t d = 1; 1 + span * d <= m; ++d) {
    const std::int64_t last_first = m - span * d;
    for (std::int64_t x = 1; x <= last_first; ++x) visit({x, d, k});
  }
}

std::vector<ArithmeticProgression> enumerate_aps(std::int64_t m, int k) {
  require_m(m);
  require_k(k);
  require_enumerable(m);
  const std::uint64_t expected = count_aps_formula(m, k);
  if (expected > kEnumerationSizeGuard) {
    throw GuardViolation("enumeration guard: " + std::to_string(expected) +
                         " progressions exceed the materialisation limit");
  }
  std::vector<ArithmeticProgression> out;
  out.reserve(expected);
  for_each_ap(m, k, [&](const ArithmeticProgression& ap) { out.push_back(ap); });
  return out;
}

ApCountDecomposition decompose_ap_count(std::int64_t m, int k) {
  require_m(m);
  require_k(k);
  if (m > kFormulaGuard) {
    throw GuardViolation("overflow guard: m = " + std::to_string(m) + " exceeds 2^31");
  }
  ApCountDecomposition dec;
  dec.m = m;
  dec.k = k;
  dec.a = m / (k - 1);
  dec.b = m % (k - 1);
  if (m < k) return dec;  // count stays 0
  // Pairs {x, y}, x < y, x = y (mod k-1): b residue classes hold a+1 elements,
  // the other k-1-b hold a.
  const auto a = static_cast<unsigned __int128>(dec.a);
  const auto b = static_cast<unsigned __int128>(dec.b);
  const unsigned __int128 count =
      b * ((a + 1) * a / 2) + (static_cast<unsigned __int128>(k - 1) - b) * (a * (a - 1) / 2);
  dec.count = static_cast<std::uint64_t>(count);
  return dec;
}

std::uint64_t count_aps_formula(std::int64_t m, int k) { return decompose_ap_count(m, k).count; }

Rational ap_count_lower_bound(std::int64_t m, int k) {
  require_m(m);
  require_k(k);
  if (m > kFormulaGuard) {
    throw GuardViolation("overflow guard: m = " + std::to_string(m) + " exceeds 2^31");
  }
  const std::int64_t span = k - 1;
  return Rational(m * (m - 3 * span), 2 * span);
}

void for_each_ap_through_pair(std::int64_t x, std::int64_t y, int k, std::int64_t m,
                              const std::function<void(std::int64_t, std::int64_t)>& visit) {
  require_k(k);
  if (x < 1 || x >= y || y > m) {
    throw std::invalid_argument("pair must satisfy 1 <= x < y <= m (x=" + std::to_string(x) +
                                ", y=" + std::to_string(y) + ", m=" + std::to_string(m) + ")");
  }
  const std::int64_t gap = y - x;
  // y sits `steps` terms after x, so d = gap / steps.
  for (std::int64_t steps = 1; steps <= k - 1 && steps <= gap; ++steps) {
    if (gap % steps != 0) continue;
    const std::int64_t d = gap / steps;
    for (std::int64_t index = 0; index + steps <= k - 1; ++index) {
      const std::int64_t first = x - index * d;
      if (first < 1) break;
      if (first + (k - 1) * d <= m) visit(first, d);
    }
  }
}

std::uint64_t count_aps_through_pair(std::int64_t x, std::int64_t y, int k, std::int64_t m) {
  std::uint64_t count = 0;
  for_each_ap_through_pair(x, y, k, m, [&](std::int64_t, std::int64_t) { ++count; });
  return count;
}

}  // namespace rainbow
