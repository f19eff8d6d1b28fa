#include <ctime>
#include <fstream>

#include "rainbow/error.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

nlohmann::json to_json(const SearchStats& stats, bool include_timing) {
  nlohmann::json j;
  j["nodes"] = stats.nodes;
  j["canonical_colorings_examined"] = stats.canonical_colorings_examined;
  if (include_timing) j["elapsed_seconds"] = stats.elapsed_seconds;
  return j;
}

nlohmann::json to_json(const SearchOutcome& outcome, int k, int t, int n, bool include_timing) {
  nlohmann::json j;
  j["k"] = k;
  j["t"] = t;
  j["n"] = n;
  j["status"] = outcome.witness            ? "witness_found"
                : outcome.budget_exhausted ? "budget_exhausted"
                                           : "no_witness";
  j["witness"] = outcome.witness ? to_json(*outcome.witness) : nlohmann::json(nullptr);
  j["search_stats"] = to_json(outcome.stats, include_timing);
  return j;
}

nlohmann::json to_json(const VerificationResult& result, bool include_timing) {
  nlohmann::json j;
  j["k"] = result.k;
  j["t"] = result.t;
  j["n"] = result.n;
  j["status"] = to_string(result.status);
  j["canonical_colorings_examined"] = result.canonical_colorings_examined;
  j["counterexample"] =
      result.counterexample ? to_json(*result.counterexample) : nlohmann::json(nullptr);
  j["search_stats"] = to_json(result.stats, include_timing);
  return j;
}

nlohmann::json to_json(const ScanReport& report, bool include_timing) {
  nlohmann::json j;
  j["k"] = report.k;
  j["facts"] = nlohmann::json::array();
  for (const ScanFact& f : report.facts) {
    nlohmann::json fj;
    fj["t"] = f.t;
    fj["n"] = f.n;
    fj["status"] = to_string(f.status);
    fj["witness"] = f.witness ? to_json(f.witness->coloring) : nlohmann::json(nullptr);
    fj["search_stats"] = to_json(f.stats, include_timing);
    j["facts"].push_back(std::move(fj));
  }
  j["refuted_up_to"] = report.refuted_up_to;
  return j;
}

nlohmann::json to_json(const WitnessRecord& record) {
  nlohmann::json j;
  j["k"] = record.k;
  j["t"] = record.t;
  j["n"] = record.n;
  j["coloring"] = to_json(record.coloring);
  j["verified"] = record.verified;
  j["discovered_at"] = record.discovered_at;
  j["search_stats"] = to_json(record.search_stats, true);
  return j;
}

WitnessRecord witness_from_json(const nlohmann::json& doc) {
  try {
    WitnessRecord r;
    r.k = doc.at("k").get<int>();
    r.t = doc.at("t").get<int>();
    r.n = doc.at("n").get<int>();
    r.coloring = coloring_from_json(doc.at("coloring"));
    r.verified = doc.at("verified").get<bool>();
    r.discovered_at = doc.at("discovered_at").get<std::string>();
    const auto& s = doc.at("search_stats");
    r.search_stats.nodes = s.at("nodes").get<std::uint64_t>();
    r.search_stats.canonical_colorings_examined =
        s.value("canonical_colorings_examined", std::uint64_t{0});
    r.search_stats.elapsed_seconds = s.value("elapsed_seconds", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed witness record: ") + e.what());
  }
}

void WitnessStore::append(const WitnessRecord& record) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot open witness store " + path_ + " for appending");
  out << to_json(record).dump() << '\n';
  if (!out) throw Error("write to witness store " + path_ + " failed");
}

std::vector<WitnessRecord> WitnessStore::load() const {
  std::vector<WitnessRecord> records;
  std::ifstream in(path_);
  if (!in) return records;  // no store yet
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(path_ + ":" + std::to_string(lineno) + ": " + e.what());
    }
    records.push_back(witness_from_json(doc));
  }
  return records;
}

std::vector<WitnessRecord> WitnessStore::find(int k, int t, int n) const {
  std::vector<WitnessRecord> hits;
  for (auto& r : load()) {
    if (r.k == k && r.t == t && r.n == n) hits.push_back(std::move(r));
  }
  return hits;
}

}  // namespace rainbow
