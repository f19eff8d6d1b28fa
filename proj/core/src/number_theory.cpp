#include "rainbow/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

void check_trial_division(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > kTrialDivisionGuard) {
    throw GuardViolation("trial-division guard: n = " + std::to_string(n) + " exceeds 10^12");
  }
}

}  // namespace

std::uint64_t tau(std::uint64_t n) {
  check_trial_division(n);
  std::uint64_t count = 1;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    std::uint64_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (rest > 1) count *= 2;
  return count;
}

std::vector<std::uint64_t> divisors_up_to(std::uint64_t n, std::uint64_t limit) {
  check_trial_division(n);
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (d <= limit) small.push_back(d);
    const std::uint64_t co = n / d;
    if (co != d && co <= limit) large.push_back(co);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<double> wigert_ratio(std::uint64_t n, std::uint64_t tau_n) {
  if (n < 16) return std::nullopt;
  const double ln_n = std::log(static_cast<double>(n));
  return std::log(static_cast<double>(tau_n)) * std::log(ln_n) / ln_n;
}

DivisorSieve::DivisorSieve(std::uint64_t limit) : limit_(limit) {
  if (limit > kSieveGuard) {
    throw GuardViolation("sieve guard: limit = " + std::to_string(limit) + " exceeds 10^7");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint32_t DivisorSieve::smallest_prime_factor(std::uint64_t n) const {
  if (n < 2 || n > limit_) throw std::out_of_range("n outside sieve range [2, limit]");
  return spf_[n];
}

std::uint64_t DivisorSieve::tau(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw std::out_of_range("n outside sieve range [1, limit]");
  std::uint64_t count = 1;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  return count;
}

std::vector<std::uint32_t> DivisorSieve::tau_table() const {
  // tau(n) = tau(n / p^e) * (e + 1) with p = spf(n); `exponent[n]` is e.
  std::vector<std::uint32_t> table(static_cast<std::size_t>(limit_) + 1, 0);
  std::vector<std::uint8_t> exponent(static_cast<std::size_t>(limit_) + 1, 0);
  if (limit_ >= 1) table[1] = 1;
  for (std::uint64_t n = 2; n <= limit_; ++n) {
    const std::uint64_t p = spf_[n];
    const std::uint64_t q = n / p;
    if (q % p == 0) {
      exponent[n] = static_cast<std::uint8_t>(exponent[q] + 1);
      table[n] = table[q] / (exponent[q] + 1) * (exponent[n] + 1);
    } else {
      exponent[n] = 1;
      table[n] = table[q] * 2;
    }
  }
  return table;
}

TauMaximum max_tau_up_to(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("N must be >= 1");
  const auto table = DivisorSieve(limit).tau_table();
  TauMaximum best;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (table[n] > best.tau) {
      best.argmax = n;
      best.tau = table[n];
    }
  }
  best.wigert_ratio = wigert_ratio(best.argmax, best.tau);
  return best;
}

DivisorProfile divisor_profile(std::uint64_t n) {
  DivisorProfile profile;
  profile.n = n;
  profile.divisors = divisors_up_to(n, n);
  profile.tau = profile.divisors.size();
  profile.wigert_ratio = wigert_ratio(n, profile.tau);
  return profile;
}

}  // namespace rainbow
