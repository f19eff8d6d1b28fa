#include <algorithm>

#include "rainbow/error.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

bool verify_witness(const Coloring& coloring, int k, int t, int n) {
  try {
    const Coloring checked = validate_equinumerous(coloring.colors(), t, n);
    return !find_rainbow_ap(checked, k).has_value();
  } catch (const ValidationError&) {
    return false;
  }
}

std::string to_string(FactStatus status) {
  switch (status) {
    case FactStatus::witness_found: return "witness_found";
    case FactStatus::no_witness: return "no_witness";
    case FactStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

ScanReport scan_tk_facts(int k, const std::set<int>& t_values, int n_max,
                         const SearchConfig& cfg, const std::optional<std::string>& store_path) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  for (const int t : t_values) {
    if (t < 1) throw std::invalid_argument("t values must be >= 1");
    if (static_cast<std::int64_t>(t) * n_max > kSearchGuard) {
      throw GuardViolation("search guard: t*n_max = " +
                           std::to_string(static_cast<std::int64_t>(t) * n_max) + " exceeds " +
                           std::to_string(kSearchGuard));
    }
  }

  ScanReport report;
  report.k = k;
  std::optional<WitnessStore> store;
  if (store_path) store.emplace(*store_path);

  for (const int t : t_values) {
    for (int n = 1; n <= n_max; ++n) {
      const SearchOutcome outcome = search_rainbow_free(k, t, n, cfg);
      ScanFact fact;
      fact.t = t;
      fact.n = n;
      fact.stats = outcome.stats;
      if (outcome.witness) {
        WitnessRecord record{k, t, n, *outcome.witness, false, utc_timestamp(), outcome.stats};
        record.verified = verify_witness(record.coloring, k, t, n);
        if (!record.verified) {
          throw Error("search returned a coloring that fails independent verification at (k=" +
                      std::to_string(k) + ", t=" + std::to_string(t) + ", n=" + std::to_string(n) +
                      ")");
        }
        if (store) store->append(record);
        fact.status = FactStatus::witness_found;
        fact.witness = std::move(record);
      } else {
        fact.status = outcome.budget_exhausted ? FactStatus::budget_exhausted : FactStatus::no_witness;
      }
      report.facts.push_back(std::move(fact));
    }
  }

  // "T_k > t" needs the defining property refuted at every t' <= t; the
  // property is not known to be monotone in t.
  auto refuted = [&](int t) {
    if (t < k) return true;
    return std::any_of(report.facts.begin(), report.facts.end(), [&](const ScanFact& f) {
      return f.t == t && f.status == FactStatus::witness_found;
    });
  };
  for (const int t : t_values) {
    bool all = true;
    for (int u = 1; u <= t && all; ++u) all = refuted(u);
    if (all) report.refuted_up_to.push_back(t);
  }
  return report;
}

}  // namespace rainbow
