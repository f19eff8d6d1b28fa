#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rainbow {

inline constexpr std::uint64_t kTrialDivisionGuard = 1'000'000'000'000ULL;  // sqrt <= 10^6
inline constexpr std::uint64_t kSieveGuard = 10'000'000;

/// Number of divisors by trial division up to sqrt(n).
std::uint64_t tau(std::uint64_t n);

/// Divisors d of n with d <= limit, ascending.
std::vector<std::uint64_t> divisors_up_to(std::uint64_t n, std::uint64_t limit);

/// ln(tau(n)) * ln(ln n) / ln n for n >= 16, absent below (ln ln n <= 1 there).
std::optional<double> wigert_ratio(std::uint64_t n, std::uint64_t tau_n);

/// Smallest-prime-factor table for [0, limit]; immutable once built.
class DivisorSieve {
 public:
  explicit DivisorSieve(std::uint64_t limit);

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
  [[nodiscard]] std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  /// tau(n) from the factorisation read off the table.
  [[nodiscard]] std::uint64_t tau(std::uint64_t n) const;
  /// tau(1..limit) in one linear pass; index 0 is unused (0).
  [[nodiscard]] std::vector<std::uint32_t> tau_table() const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

struct TauMaximum {
  std::uint64_t argmax = 1;
  std::uint64_t tau = 1;
  std::optional<double> wigert_ratio;
};

/// Smallest n <= N maximising tau(n), via the sieve. N <= 10^7.
TauMaximum max_tau_up_to(std::uint64_t limit);

struct DivisorProfile {
  std::uint64_t n = 1;
  std::uint64_t tau = 1;
  std::vector<std::uint64_t> divisors;
  std::optional<double> wigert_ratio;
};

DivisorProfile divisor_profile(std::uint64_t n);

}  // namespace rainbow
