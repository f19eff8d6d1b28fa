// One line per criterion: "PASS <id> <title> (<detail>)" or "FAIL ...".

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rainbow/audit.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/matrix.hpp"
#include "rainbow/number_theory.hpp"
#include "rainbow/progression.hpp"
#include "rainbow/search.hpp"
#include "rainbow/zarankiewicz.hpp"

namespace {

using namespace rainbow;

// Largest ln(tau(n)) ln ln n / ln n over 16 <= n <= 10^6, recorded from an
// independent sieve run; attained at n = 720720 with tau = 240.
constexpr double kWigertMaxUpToMillion = 1.0572008192731956;
constexpr std::uint64_t kWigertArgmax = 720720;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

SearchConfig deterministic_config(int width) {
  SearchConfig cfg;
  cfg.parallel_width = width;
  cfg.deterministic = true;
  cfg.time_budget = 0;
  return cfg;
}

Coloring shuffled(std::mt19937_64& rng, int t, int n) {
  std::vector<Color> raw;
  for (int c = 0; c < t; ++c)
    for (int i = 0; i < n; ++i) raw.push_back(c);
  std::shuffle(raw.begin(), raw.end(), rng);
  return validate_equinumerous(raw, t, n);
}

// Witness check that does not go through the library's rainbow scan.
bool independently_rainbow_free(const Coloring& c, int k, int t, int n) {
  std::vector<int> raw(c.colors().begin(), c.colors().end());
  try {
    (void)validate_equinumerous(c.colors(), t, n);
  } catch (const std::exception&) {
    return false;
  }
  return !oracle::has_rainbow(raw, k);
}

Outcome formula_oracle() {
  std::uint64_t cases = 0;
  for (int k = 3; k <= 8; ++k)
    for (std::int64_t m = k; m <= 500; ++m) {
      const auto formula = count_aps_formula(m, k);
      const auto listed = enumerate_aps(m, k).size();
      if (formula != listed) {
        std::ostringstream os;
        os << "m=" << m << " k=" << k << " formula=" << formula << " enumerated=" << listed;
        return fail(os.str());
      }
      ++cases;
    }
  for (std::int64_t m = 3; m <= 40; ++m)
    if (count_aps_formula(m, 3) != oracle::all_aps(m, 3).size()) return fail("double-loop mismatch m=" + std::to_string(m));
  return {true, std::to_string(cases) + " (m,k) pairs"};
}

Outcome strict_lower_bound() {
  std::uint64_t cases = 0;
  for (int k = 3; k <= 8; ++k)
    for (std::int64_t m = k; m <= 500; ++m) {
      const Rational count(static_cast<std::int64_t>(count_aps_formula(m, k)));
      const Rational bound = ap_count_lower_bound(m, k);
      if (!(count > bound)) return fail("m=" + std::to_string(m) + " k=" + std::to_string(k) + " bound=" + bound.str());
      ++cases;
    }
  return {true, std::to_string(cases) + " strict inequalities"};
}

Outcome pair_bounds() {
  std::uint64_t pairs = 0;
  for (int k = 3; k <= 6; ++k) {
    const std::uint64_t ck2 = choose2(static_cast<std::uint64_t>(k));
    for (std::int64_t m = 2; m <= 60; ++m)
      for (std::int64_t x = 1; x <= m; ++x)
        for (std::int64_t y = x + 1; y <= m; ++y) {
          const auto count = count_aps_through_pair(x, y, k, m);
          const auto tau_bound = static_cast<std::uint64_t>(k) * tau(static_cast<std::uint64_t>(y - x));
          if (count > ck2 || count > tau_bound) {
            std::ostringstream os;
            os << "k=" << k << " m=" << m << " x=" << x << " y=" << y << " count=" << count;
            return fail(os.str());
          }
          ++pairs;
        }
    for (std::int64_t x = 1; x <= 60; ++x)
      for (std::int64_t y = x + 1; y <= 60; ++y)
        if (count_aps_through_pair(x, y, k, 60) != oracle::aps_through(x, y, k, 60))
          return fail("oracle mismatch at x=" + std::to_string(x) + " y=" + std::to_string(y));
  }
  return {true, std::to_string(pairs) + " pairs"};
}

Outcome t3_verification(int width, std::string* json) {
  std::uint64_t examined = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto result = verify_all(3, 3, n, deterministic_config(width));
    if (json) *json += to_json(result, false).dump() + "\n";
    if (result.status != VerificationStatus::all_contain_rainbow)
      return fail("n=" + std::to_string(n) + " status=" + to_string(result.status));
    examined += result.canonical_colorings_examined;
    if (n <= 4 && width == 1) {
      const auto raw = oracle::classify_raw(3, 3, n);
      if (raw.rainbow_free != 0) return fail("oracle found a rainbow-free coloring at n=" + std::to_string(n));
      if (raw.raw != 6 * result.canonical_colorings_examined)
        return fail("canonical count disagrees with raw/3! at n=" + std::to_string(n));
    }
  }
  return {true, std::to_string(examined) + " canonical colorings"};
}

Outcome trivial_witnesses(int width, std::string* json, std::vector<WitnessRecord>* emitted) {
  int found = 0;
  for (int k = 3; k <= 7; ++k)
    for (int t = 1; t < k; ++t)
      for (int n = 1; n <= 4; ++n) {
        const auto out = search_rainbow_free(k, t, n, deterministic_config(width));
        if (json) *json += to_json(out, k, t, n, false).dump() + "\n";
        if (!out.witness) return fail("no witness at k=" + std::to_string(k) + " t=" + std::to_string(t));
        if (!verify_witness(*out.witness, k, t, n)) return fail("witness fails verification");
        if (emitted) emitted->push_back({k, t, n, *out.witness, true, {}, out.stats});
        ++found;
      }
  return {true, std::to_string(found) + " witnesses"};
}

Outcome soundness(int width, std::string* json, std::vector<WitnessRecord>* emitted) {
  auto cfg = deterministic_config(width);
  cfg.node_budget = 100'000'000;
  const auto report = scan_tk_facts(4, {4}, 6, cfg);
  if (json) *json += to_json(report, false).dump() + "\n";
  std::string found;
  for (const auto& fact : report.facts)
    if (fact.witness) {
      if (emitted) emitted->push_back(*fact.witness);
      found += std::to_string(fact.n) + " ";
    }
  if (!emitted) return {};
  int checked = 0;
  for (const auto& rec : *emitted) {
    if (!independently_rainbow_free(rec.coloring, rec.k, rec.t, rec.n))
      return fail("witness at k=" + std::to_string(rec.k) + " t=" + std::to_string(rec.t) + " n=" +
                  std::to_string(rec.n) + " fails the independent check");
    ++checked;
  }
  return {true, std::to_string(checked) + " witnesses rechecked; T_4 witnesses at n = " + found};
}

Outcome zarankiewicz_vs_kst() {
  int cases = 0;
  for (int m = 2; m <= 5; ++m)
    for (int n = 2; n <= 5; ++n) {
      const auto r = exact_zarankiewicz(m, n, 2, 2);
      const int brute = oracle::brute_force_zarankiewicz(m, n, 2, 2);
      const double bound = kst_bound(m, n, 2, 2);
      std::ostringstream os;
      os << m << "x" << n << " exact=" << r.exact_value << " brute=" << brute << " kst=" << bound;
      if (r.exact_value != brute) return fail(os.str());
      if (r.witness.ones() != r.exact_value || contains_all_ones_pattern(r.witness, 2, 2))
        return fail("bad witness " + os.str());
      if (static_cast<double>(r.exact_value) > bound + kKstSlack) return fail("above bound " + os.str());
      ++cases;
    }
  return {true, std::to_string(cases) + " shapes"};
}

Outcome tau_correctness() {
  const DivisorSieve small(100'000);
  for (std::uint64_t n = 1; n <= 100'000; ++n)
    if (small.tau(n) != tau(n)) return fail("sieve/trial mismatch at n=" + std::to_string(n));
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  for (int checked = 0; checked < 1000;) {
    const auto a = pick(rng);
    const auto b = pick(rng);
    if (std::gcd(a, b) != 1) continue;
    if (tau(a * b) != tau(a) * tau(b)) return fail("multiplicativity fails at " + std::to_string(a) + "*" + std::to_string(b));
    ++checked;
  }
  const auto table = DivisorSieve(1'000'000).tau_table();
  double best = 0.0;
  std::uint64_t arg = 0;
  for (std::uint64_t n = 16; n <= 1'000'000; ++n) {
    const double r = *wigert_ratio(n, table[n]);
    if (r > best) {
      best = r;
      arg = n;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "max Wigert ratio " << best << " at n=" << arg;
  if (arg != kWigertArgmax || std::abs(best - kWigertMaxUpToMillion) > 1e-12) return fail(os.str());
  return {true, os.str()};
}

std::string first_failure(const AuditReport& report) {
  for (const auto& check : report.checks)
    if (!check.informational && !check.pass) return check.name + " " + check.detail;
  return {};
}

Outcome proof_audit() {
  std::uint64_t audits = 0;
  for (int t = 1; t <= 9; ++t)
    for (int n = 1; t * n <= 9; ++n) {
      std::string problem;
      oracle::for_each_raw_coloring(t, n, [&](const std::vector<int>& raw) {
        if (!problem.empty()) return;
        const auto c = validate_equinumerous(raw, t, n);
        for (int k = 3; k <= 5; ++k)
          for (const std::int64_t w : {std::int64_t{1}, std::int64_t{3}, default_wide_threshold(k)}) {
            const auto report = audit_proof_chain(c, k, w);
            ++audits;
            if (!report.pass) problem = "t=" + std::to_string(t) + " n=" + std::to_string(n) + " " + first_failure(report);
          }
      });
      if (!problem.empty()) return fail(problem);
    }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const int t = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto c = shuffled(rng, t, n);
    for (int k = 3; k <= 5; ++k)
      for (const std::int64_t w : {std::int64_t{1}, std::int64_t{3}, default_wide_threshold(k)}) {
        const auto report = audit_proof_chain(c, k, w, static_cast<std::uint64_t>(trial));
        ++audits;
        if (!report.pass) return fail("random trial " + std::to_string(trial) + " " + first_failure(report));
      }
  }
  return {true, std::to_string(audits) + " audits"};
}

Outcome determinism() {
  std::string one;
  std::string four;
  t3_verification(1, &one);
  trivial_witnesses(1, &one, nullptr);
  soundness(1, &one, nullptr);
  t3_verification(4, &four);
  trivial_witnesses(4, &four, nullptr);
  soundness(4, &four, nullptr);
  if (one != four) return fail("JSON differs between widths 1 and 4");
  return {true, std::to_string(one.size()) + " identical bytes"};
}

}  // namespace

int main() {
  std::vector<WitnessRecord> emitted;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"formula matches enumeration", formula_oracle},
      {"strict AP-count lower bound", strict_lower_bound},
      {"per-pair AP bounds", pair_bounds},
      {"three colors always give a rainbow AP(3) for n <= 6", [] { return t3_verification(1, nullptr); }},
      {"pigeonhole witnesses for t < k", [&] { return trivial_witnesses(1, nullptr, &emitted); }},
      {"every emitted witness is rainbow-free and equinumerous", [&] { return soundness(1, nullptr, &emitted); }},
      {"exact Zarankiewicz values within the KST bound", zarankiewicz_vs_kst},
      {"divisor counts and Wigert regression", tau_correctness},
      {"proof-chain audit", proof_audit},
      {"deterministic output across widths 1 and 4", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += outcome.pass ? 0 : 1;
    std::printf("%s %2zu %s (%s; %.2fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
