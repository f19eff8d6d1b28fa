#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rainbow/audit.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/error.hpp"
#include "rainbow/number_theory.hpp"
#include "rainbow/progression.hpp"
#include "rainbow/search.hpp"
#include "rainbow/zarankiewicz.hpp"

#ifndef RAINBOW_VERSION
#define RAINBOW_VERSION "dev"
#endif

namespace rainbow::cli {

namespace {

using nlohmann::json;

struct BudgetFlags {
  std::uint64_t node_budget = SearchConfig{}.node_budget;
  double time_budget = SearchConfig{}.time_budget;
  int threads = 1;
  bool deterministic = false;

  void attach(CLI::App* sub) {
    sub->add_option("--node-budget", node_budget, "Maximum search-tree nodes")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget", time_budget, "Wall-clock limit in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", threads, "Independent subtree workers")->check(CLI::PositiveNumber);
    sub->add_flag("--deterministic", deterministic,
                  "Result independent of --threads; omit wall-clock fields");
  }

  [[nodiscard]] SearchConfig config() const {
    SearchConfig cfg;
    cfg.node_budget = node_budget;
    cfg.time_budget = time_budget;
    cfg.parallel_width = threads;
    cfg.deterministic = deterministic;
    return cfg;
  }

  [[nodiscard]] json to_json() const {
    return {{"node_budget", node_budget},
            {"time_budget", time_budget},
            {"threads", threads},
            {"deterministic", deterministic}};
  }
};

// Everything one invocation can set; CLI11 binds straight into it.
struct Options {
  std::string format = "text";
  std::int64_t seed = 0;
  bool deterministic = false;

  std::int64_t m = 0;
  int k = 0;
  bool oracle = false;

  std::int64_t x = 0;
  std::int64_t y = 0;

  int t = 0;
  int n = 0;
  BudgetFlags budget;

  std::string t_list;
  int n_max = 0;
  std::string store;

  int zm = 0;
  int zn = 0;
  int zs = 0;
  int zt = 0;
  bool exact_only = false;
  bool bound_only = false;

  std::uint64_t tau_n = 0;
  std::uint64_t tau_max = 0;

  std::string input;
  std::int64_t wide_threshold = 0;
};

class Emitter {
 public:
  Emitter(std::string subcommand, json parameters, const Options& opts, bool deterministic)
      : opts_(opts), deterministic_(deterministic) {
    manifest_["subcommand"] = std::move(subcommand);
    manifest_["parameters"] = std::move(parameters);
    manifest_["seed"] = opts.seed;
    manifest_["tool_version"] = RAINBOW_VERSION;
    manifest_["format"] = opts.format;
    if (!deterministic_) manifest_["started_at"] = utc_timestamp();
  }

  [[nodiscard]] bool deterministic() const { return deterministic_; }

  json manifest() {
    json m = manifest_;
    if (!deterministic_) m["finished_at"] = utc_timestamp();
    return m;
  }

  /// `result` for json, `text` for text, `csv_rows` (header first) for csv.
  void emit(std::ostream& out, json result, const std::string& text,
            const std::vector<std::vector<std::string>>& csv_rows) {
    if (opts_.format == "json") {
      result["manifest"] = manifest();
      out << result.dump(2) << '\n';
    } else if (opts_.format == "csv") {
      out << "# manifest: " << manifest().dump() << '\n';
      for (const auto& row : csv_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
      }
    } else {
      out << text;
    }
  }

 private:
  const Options& opts_;
  bool deterministic_;
  json manifest_;
};

std::string fmt_double(double v, int precision = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string join_colors(const Coloring& c) {
  std::string s;
  for (const Color col : c.colors()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(col);
  }
  return s;
}

std::set<int> parse_t_list(const std::string& list) {
  std::set<int> values;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--t: \"" + item + "\" is not an integer");
    }
    if (used != item.size()) throw std::invalid_argument("--t: \"" + item + "\" is not an integer");
    values.insert(v);
  }
  if (values.empty()) throw std::invalid_argument("--t needs at least one value");
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_apcount(const Options& o, std::ostream& out) {
  Emitter em("apcount", {{"m", o.m}, {"k", o.k}, {"oracle", o.oracle}}, o, o.deterministic);
  const ApCountDecomposition dec = decompose_ap_count(o.m, o.k);
  std::uint64_t count = dec.count;
  if (o.oracle) {
    count = 0;
    for_each_ap(o.m, o.k, [&](const ArithmeticProgression&) { ++count; });
  }
  const Rational lower = ap_count_lower_bound(o.m, o.k);
  json r = {{"m", o.m},
            {"k", o.k},
            {"backend", o.oracle ? "enumeration" : "formula"},
            {"count", count},
            {"a", dec.a},
            {"b", dec.b},
            {"lower_bound", lower.str()}};
  em.emit(out, r, std::to_string(count) + "\n",
          {{"m", "k", "backend", "count", "lower_bound"},
           {std::to_string(o.m), std::to_string(o.k), o.oracle ? "enumeration" : "formula",
            std::to_string(count), lower.str()}});
  return kOk;
}

int cmd_pair(const Options& o, std::ostream& out) {
  Emitter em("pair", {{"x", o.x}, {"y", o.y}, {"k", o.k}, {"m", o.m}}, o, o.deterministic);
  const std::uint64_t count = count_aps_through_pair(o.x, o.y, o.k, o.m);
  const std::uint64_t tau_d = tau(static_cast<std::uint64_t>(o.y - o.x));
  json r = {{"x", o.x},
            {"y", o.y},
            {"k", o.k},
            {"m", o.m},
            {"count", count},
            {"choose_k_2", choose2(static_cast<std::uint64_t>(o.k))},
            {"k_tau", static_cast<std::uint64_t>(o.k) * tau_d}};
  em.emit(out, r, std::to_string(count) + "\n",
          {{"x", "y", "k", "m", "count"},
           {std::to_string(o.x), std::to_string(o.y), std::to_string(o.k), std::to_string(o.m),
            std::to_string(count)}});
  return kOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  json params = o.budget.to_json();
  params["k"] = o.k;
  params["t"] = o.t;
  params["n"] = o.n;
  const bool det = o.budget.deterministic || o.deterministic;
  Emitter em("search", params, o, det);
  const SearchOutcome outcome = search_rainbow_free(o.k, o.t, o.n, o.budget.config());
  json r = to_json(outcome, o.k, o.t, o.n, !det);
  std::string text;
  std::string status = r["status"];
  if (outcome.witness) {
    text = "witness: " + join_colors(*outcome.witness) + "\n";
  } else if (outcome.budget_exhausted) {
    text = "budget exhausted after " + std::to_string(outcome.stats.nodes) + " nodes\n";
  } else {
    text = "no rainbow-free equinumerous coloring exists\n";
  }
  em.emit(out, r, text,
          {{"k", "t", "n", "status", "nodes", "witness"},
           {std::to_string(o.k), std::to_string(o.t), std::to_string(o.n), status,
            std::to_string(outcome.stats.nodes),
            outcome.witness ? join_colors(*outcome.witness) : ""}});
  return !outcome.witness && outcome.budget_exhausted ? kBudget : kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  json params = o.budget.to_json();
  params["k"] = o.k;
  params["t"] = o.t;
  params["n"] = o.n;
  const bool det = o.budget.deterministic || o.deterministic;
  Emitter em("verify", params, o, det);
  const VerificationResult v = verify_all(o.k, o.t, o.n, o.budget.config());
  std::string text = to_string(v.status) + "\n";
  if (v.counterexample) text += "counterexample: " + join_colors(*v.counterexample) + "\n";
  text += "canonical colorings examined: " + std::to_string(v.canonical_colorings_examined) + "\n";
  em.emit(out, to_json(v, !det), text,
          {{"k", "t", "n", "status", "canonical_colorings_examined", "counterexample"},
           {std::to_string(o.k), std::to_string(o.t), std::to_string(o.n), to_string(v.status),
            std::to_string(v.canonical_colorings_examined),
            v.counterexample ? join_colors(*v.counterexample) : ""}});
  return v.status == VerificationStatus::budget_exhausted ? kBudget : kOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const std::set<int> ts = parse_t_list(o.t_list);
  json params = o.budget.to_json();
  params["k"] = o.k;
  params["t"] = ts;
  params["n_max"] = o.n_max;
  params["store"] = o.store.empty() ? json(nullptr) : json(o.store);
  const bool det = o.budget.deterministic || o.deterministic;
  Emitter em("scan", params, o, det);
  const ScanReport report =
      scan_tk_facts(o.k, ts, o.n_max, o.budget.config(),
                    o.store.empty() ? std::nullopt : std::optional<std::string>(o.store));
  std::string text;
  std::vector<std::vector<std::string>> rows{{"t", "n", "status", "nodes", "witness"}};
  bool exhausted = false;
  for (const ScanFact& f : report.facts) {
    exhausted = exhausted || f.status == FactStatus::budget_exhausted;
    const std::string w = f.witness ? join_colors(f.witness->coloring) : "";
    text += "t=" + std::to_string(f.t) + " n=" + std::to_string(f.n) + ": ";
    switch (f.status) {
      case FactStatus::witness_found:
        text += "property fails (rainbow-free witness " + w + ")\n";
        break;
      case FactStatus::no_witness:
        text += "every coloring contains a rainbow AP(" + std::to_string(o.k) + ")\n";
        break;
      case FactStatus::budget_exhausted:
        text += "budget exhausted\n";
        break;
    }
    rows.push_back({std::to_string(f.t), std::to_string(f.n), to_string(f.status),
                    std::to_string(f.stats.nodes), w});
  }
  for (const int t : report.refuted_up_to) {
    text += "T_" + std::to_string(o.k) + " > " + std::to_string(t) + "\n";
  }
  em.emit(out, to_json(report, !det), text, rows);
  return exhausted ? kBudget : kOk;
}

int cmd_zarankiewicz(const Options& o, std::ostream& out) {
  if (o.exact_only && o.bound_only) throw std::invalid_argument("--exact and --bound-only are exclusive");
  Emitter em("zarankiewicz",
             {{"m", o.zm}, {"n", o.zn}, {"s", o.zs}, {"t", o.zt}, {"exact", o.exact_only},
              {"bound_only", o.bound_only}},
             o, o.deterministic);
  if (o.bound_only) {
    const double bound = kst_bound(o.zm, o.zn, o.zs, o.zt);
    json r = {{"m", o.zm}, {"n", o.zn}, {"s", o.zs}, {"t", o.zt}, {"kst_upper", bound}};
    em.emit(out, r, "kst_bound " + fmt_double(bound, 4) + "\n",
            {{"m", "n", "s", "t", "kst_upper"},
             {std::to_string(o.zm), std::to_string(o.zn), std::to_string(o.zs), std::to_string(o.zt),
              fmt_double(bound, 10)}});
    return kOk;
  }
  ExtremalResult res = exact_zarankiewicz(o.zm, o.zn, o.zs, o.zt);
  if (o.exact_only) res.kst_upper.reset();
  std::string text = "exact " + std::to_string(res.exact_value) + "\n";
  if (res.kst_upper) text += "kst_bound " + fmt_double(*res.kst_upper, 4) + "\n";
  text += format_matrix_text(res.witness);
  em.emit(out, to_json(res), text,
          {{"m", "n", "s", "t", "exact_value", "kst_upper"},
           {std::to_string(o.zm), std::to_string(o.zn), std::to_string(o.zs), std::to_string(o.zt),
            std::to_string(res.exact_value), res.kst_upper ? fmt_double(*res.kst_upper, 10) : ""}});
  return kOk;
}

json ratio_json(const std::optional<double>& r) { return r ? json(*r) : json(nullptr); }
std::string ratio_text(const std::optional<double>& r) { return r ? fmt_double(*r, 6) : ""; }

int cmd_tau(const Options& o, std::ostream& out) {
  if ((o.tau_n == 0) == (o.tau_max == 0)) throw std::invalid_argument("tau needs exactly one of --n or --max");
  if (o.tau_n != 0) {
    Emitter em("tau", {{"n", o.tau_n}}, o, o.deterministic);
    const DivisorProfile p = divisor_profile(o.tau_n);
    json r = {{"n", p.n}, {"tau", p.tau}, {"divisors", p.divisors}, {"wigert_ratio", ratio_json(p.wigert_ratio)}};
    std::string text = std::to_string(p.tau) + "\n";
    em.emit(out, r, text,
            {{"n", "tau", "wigert_ratio"}, {std::to_string(p.n), std::to_string(p.tau), ratio_text(p.wigert_ratio)}});
    return kOk;
  }
  Emitter em("tau", {{"max", o.tau_max}}, o, o.deterministic);
  if (o.format == "csv") {
    const DivisorSieve sieve(o.tau_max);
    const auto table = sieve.tau_table();
    std::vector<std::vector<std::string>> rows{{"n", "tau", "wigert_ratio"}};
    rows.reserve(static_cast<std::size_t>(o.tau_max) + 1);
    for (std::uint64_t n = 1; n <= o.tau_max; ++n) {
      rows.push_back({std::to_string(n), std::to_string(table[n]), ratio_text(wigert_ratio(n, table[n]))});
    }
    em.emit(out, {}, "", rows);
    return kOk;
  }
  const TauMaximum best = max_tau_up_to(o.tau_max);
  json r = {{"max", o.tau_max}, {"argmax", best.argmax}, {"tau", best.tau},
            {"wigert_ratio", ratio_json(best.wigert_ratio)}};
  std::string text = "argmax " + std::to_string(best.argmax) + "\ntau " + std::to_string(best.tau) + "\n";
  if (best.wigert_ratio) text += "wigert_ratio " + fmt_double(*best.wigert_ratio) + "\n";
  em.emit(out, r, text, {});
  return kOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const Coloring c = parse_coloring_document(read_file(o.input));
  const std::int64_t w = o.wide_threshold > 0 ? o.wide_threshold : default_wide_threshold(o.k);
  Emitter em("audit", {{"input", o.input}, {"k", o.k}, {"wide_threshold", w}}, o, o.deterministic);
  const AuditReport report = audit_proof_chain(c, o.k, w, static_cast<std::uint64_t>(o.seed));
  std::string text;
  std::vector<std::vector<std::string>> rows{{"name", "lhs", "relation", "rhs", "pass", "informational"}};
  for (const AuditCheck& chk : report.checks) {
    const std::string rhs = chk.rhs_real ? fmt_double(*chk.rhs_real, 6) : chk.rhs.str();
    text += std::string(chk.pass ? "PASS " : (chk.informational ? "INFO " : "FAIL ")) + chk.name + ": " +
            chk.lhs.str() + " " + to_string(chk.relation) + " " + rhs + "  (" + chk.detail + ", " +
            std::to_string(chk.instances) + " instances)\n";
    rows.push_back({chk.name, chk.lhs.str(), to_string(chk.relation), rhs, chk.pass ? "true" : "false",
                    chk.informational ? "true" : "false"});
  }
  text += report.pass ? "audit passed\n" : "audit FAILED\n";
  em.emit(out, to_json(report), text, rows);
  return report.pass ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rainbow arithmetic progressions, Zarankiewicz values and divisor bounds"};
  app.name("rainbow");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_flag("--deterministic", o.deterministic, "Omit wall-clock fields from the output");

  auto* apcount = app.add_subcommand("apcount", "Count AP(k) in [m]");
  apcount->add_option("--m", o.m)->required()->check(CLI::PositiveNumber);
  apcount->add_option("--k", o.k)->required();
  apcount->add_flag("--oracle", o.oracle, "Count by enumeration instead of the closed form");

  auto* pair = app.add_subcommand("pair", "Count AP(k) in [m] through x and y");
  pair->add_option("--x", o.x)->required();
  pair->add_option("--y", o.y)->required();
  pair->add_option("--k", o.k)->required();
  pair->add_option("--m", o.m)->required();

  auto* search = app.add_subcommand("search", "Find a rainbow-free equinumerous coloring");
  auto* verify = app.add_subcommand("verify", "Check that every equinumerous coloring has a rainbow AP(k)");
  for (auto* sub : {search, verify}) {
    sub->add_option("--k", o.k)->required();
    sub->add_option("--t", o.t)->required();
    sub->add_option("--n", o.n)->required();
    o.budget.attach(sub);
  }

  auto* scan = app.add_subcommand("scan", "Search every (t, n) cell and persist witnesses");
  scan->add_option("--k", o.k)->required();
  scan->add_option("--t", o.t_list, "Comma-separated list of t values")->required();
  scan->add_option("--n-max", o.n_max)->required();
  scan->add_option("--store", o.store, "JSON-lines witness store (appended to)");
  o.budget.attach(scan);

  auto* zaran = app.add_subcommand("zarankiewicz", "Exact ex(m, n, R_{s,t}) and the KST bound");
  zaran->add_option("--m", o.zm)->required();
  zaran->add_option("--n", o.zn)->required();
  zaran->add_option("--s", o.zs)->required();
  zaran->add_option("--t", o.zt)->required();
  zaran->add_flag("--exact", o.exact_only, "Exact value only");
  zaran->add_flag("--bound-only", o.bound_only, "KST bound only");

  auto* tau_cmd = app.add_subcommand("tau", "Divisor counts and Wigert ratios");
  tau_cmd->add_option("--n", o.tau_n)->check(CLI::PositiveNumber);
  tau_cmd->add_option("--max", o.tau_max)->check(CLI::PositiveNumber);

  auto* audit = app.add_subcommand("audit", "Check the non-rainbow counting argument on one coloring");
  audit->add_option("--input", o.input, "Coloring JSON document")->required();
  audit->add_option("--k", o.k)->required();
  audit->add_option("--wide-threshold", o.wide_threshold, "Wide-gap threshold W (default k^8)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*apcount) return cmd_apcount(o, out);
    if (*pair) return cmd_pair(o, out);
    if (*search) return cmd_search(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*zaran) return cmd_zarankiewicz(o, out);
    if (*tau_cmd) return cmd_tau(o, out);
    if (*audit) return cmd_audit(o, out);
  } catch (const GuardViolation& e) {
    err << "guard violation: " << e.what() << '\n';
    return kGuard;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  err << "no subcommand given\n";
  return kUsage;
}

}  // namespace rainbow::cli
