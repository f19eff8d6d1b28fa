#include "rainbow/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rainbow/error.hpp"
#include "rainbow/number_theory.hpp"
#include "rainbow/progression.hpp"
#include "rainbow/zarankiewicz.hpp"

namespace rainbow {

ColorClassProfile profile_color_class(const Coloring& c, Color color, int k,
                                      std::int64_t wide_threshold) {
  if (color < 0 || color >= c.t()) {
    throw std::invalid_argument("color " + std::to_string(color) + " out of range [0, " +
                                std::to_string(c.t() - 1) + "]");
  }
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (wide_threshold < 1) throw std::invalid_argument("wide threshold must be >= 1");

  ColorClassProfile p;
  p.color = color;
  p.k = k;
  p.wide_threshold = wide_threshold;
  for (std::int64_t pos = 1; pos <= c.size(); ++pos) {
    if (c.at(pos) == color) p.positions.push_back(pos);
  }
  for (std::size_t j = 1; j < p.positions.size(); ++j) {
    const std::int64_t gap = p.positions[j] - p.positions[j - 1];
    p.gaps.push_back(gap);
    if (gap > wide_threshold) p.wide_gap_indices.push_back(static_cast<int>(j));
  }
  const int n = static_cast<int>(p.positions.size());
  for (int first = 1; first <= n; first += k) {
    const Block block{first, std::min(first + k - 1, n)};
    p.blocks.push_back(block);
    // Gap j joins a_j and a_{j+1}; both lie in the block iff first <= j < last.
    const bool wide = std::any_of(p.wide_gap_indices.begin(), p.wide_gap_indices.end(),
                                  [&](int j) { return block.first <= j && j < block.last; });
    p.wide_block_flags.push_back(wide);
  }
  return p;
}

BinaryMatrix build_divisibility_matrix(const ColorClassProfile& profile, int j, int s) {
  const int n = static_cast<int>(profile.positions.size());
  if (j < 1 || j > n) throw std::out_of_range("anchor index j out of range");
  if (s < 1 || s > static_cast<int>(profile.blocks.size())) {
    throw std::out_of_range("block index s out of range");
  }
  const Block& block = profile.blocks[static_cast<std::size_t>(s - 1)];
  const std::int64_t anchor = profile.positions[static_cast<std::size_t>(j - 1)];
  BinaryMatrix a(profile.k - 1, block.size());
  for (int y = 1; y <= block.size(); ++y) {
    const int r = block.first + y - 1;
    if (r <= j) continue;
    const std::int64_t diff = profile.positions[static_cast<std::size_t>(r - 1)] - anchor;
    for (int x = 1; x <= profile.k - 1; ++x) {
      if (diff % x == 0) a.set(x - 1, y - 1, true);
    }
  }
  return a;
}

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::equal: return "==";
    case Relation::less: return "<";
  }
  return "?";
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const AuditCheck& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::int64_t default_wide_threshold(int k) {
  std::int64_t w = 1;
  for (int i = 0; i < 8; ++i) {
    if (w > std::numeric_limits<std::int64_t>::max() / k) return std::numeric_limits<std::int64_t>::max();
    w *= k;
  }
  return w;
}

namespace {

bool holds(Relation rel, const Rational& lhs, const Rational& rhs) {
  switch (rel) {
    case Relation::less_equal: return lhs <= rhs;
    case Relation::greater_equal: return lhs >= rhs;
    case Relation::equal: return lhs == rhs;
    case Relation::less: return lhs < rhs;
  }
  return false;
}

// Collects every instance of one named inequality and keeps the tightest
// (smallest margin) instance, or the first violation.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, Relation rel, bool informational = false) {
    check_.name = std::move(name);
    check_.relation = rel;
    check_.informational = informational;
  }

  void record(const Rational& lhs, const Rational& rhs, const std::string& detail) {
    const bool ok = holds(check_.relation, lhs, rhs);
    // Margin is only used to choose which instance to display.
    const double margin = std::abs(rhs.to_double() - lhs.to_double());
    keep(ok, margin, detail, [&] {
      check_.lhs = lhs;
      check_.rhs = rhs;
    });
  }

  void record_real(const Rational& lhs, double rhs, const std::string& detail) {
    const bool ok = lhs.to_double() <= rhs + kKstSlack;
    keep(ok, rhs - lhs.to_double(), detail, [&] {
      check_.lhs = lhs;
      check_.rhs_real = rhs;
    });
  }

  [[nodiscard]] AuditCheck finish() && { return std::move(check_); }

 private:
  template <typename Assign>
  void keep(bool ok, double margin, const std::string& detail, Assign assign) {
    ++check_.instances;
    const bool first = check_.instances == 1;
    if (!ok && check_.pass) {
      check_.pass = false;
      assign();
      check_.detail = detail;
      return;
    }
    if (check_.pass && (first || margin < best_margin_)) {
      best_margin_ = margin;
      assign();
      check_.detail = detail;
    }
  }

  AuditCheck check_;
  double best_margin_ = 0.0;
};

std::string where(Color color, std::int64_t j = -1, std::int64_t r = -1) {
  std::string s = "color " + std::to_string(color);
  if (j >= 0) s += ", j=" + std::to_string(j);
  if (r >= 0) s += ", r=" + std::to_string(r);
  return s;
}

std::int64_t count_small_divisors(std::int64_t value, int below) {
  std::int64_t count = 0;
  for (int x = 1; x <= below; ++x) count += value % x == 0 ? 1 : 0;
  return count;
}

}  // namespace

AuditReport audit_proof_chain(const Coloring& c, int k, std::int64_t wide_threshold,
                              std::uint64_t sample_seed) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (wide_threshold < 1) throw std::invalid_argument("wide threshold must be >= 1");
  if (c.size() > kAuditGuard) {
    throw GuardViolation("audit guard: t*n = " + std::to_string(c.size()) + " exceeds " +
                         std::to_string(kAuditGuard));
  }
  const int t = c.t();
  const int n = c.n();
  const std::int64_t m = c.size();
  const auto pair_bound = static_cast<std::int64_t>(choose2(static_cast<std::uint64_t>(k)));

  AuditReport report;
  report.k = k;
  report.t = t;
  report.n = n;
  report.wide_threshold = wide_threshold;

  CheckAccumulator wide_pigeonhole("wide_gap_pigeonhole", Relation::less_equal);
  CheckAccumulator wide_blocks("wide_blocks_at_most_wide_gaps", Relation::less_equal);
  CheckAccumulator pair_check("pair_bound", Relation::less_equal);
  CheckAccumulator ones_check("matrix_ones_bound", Relation::less_equal);
  CheckAccumulator column_check("column_intersection_law", Relation::less_equal);
  CheckAccumulator kst_check("block_ones_within_kst", Relation::less_equal, true);

  const bool all_pairs = m <= kAuditAllPairsLimit;
  std::mt19937_64 rng(sample_seed);

  for (Color color = 0; color < t; ++color) {
    ColorClassProfile profile = profile_color_class(c, color, k, wide_threshold);
    const auto& a = profile.positions;

    // |wide gaps| * W < sum of gaps < t*n.
    wide_pigeonhole.record(static_cast<std::int64_t>(profile.wide_gap_indices.size()),
                           Rational(m, wide_threshold), where(color));
    const auto wide_block_count = std::count(profile.wide_block_flags.begin(),
                                             profile.wide_block_flags.end(), true);
    wide_blocks.record(static_cast<std::int64_t>(wide_block_count),
                       static_cast<std::int64_t>(profile.wide_gap_indices.size()), where(color));

    // Pair bound: AP(k) through a_j < a_r is at most min(C(k,2), k*tau(a_r - a_j)).
    auto check_pair = [&](int j, int r) {
      const std::int64_t x = a[static_cast<std::size_t>(j - 1)];
      const std::int64_t y = a[static_cast<std::size_t>(r - 1)];
      const auto through = static_cast<std::int64_t>(count_aps_through_pair(x, y, k, m));
      const auto divisor_bound = static_cast<std::int64_t>(k) *
                                 static_cast<std::int64_t>(tau(static_cast<std::uint64_t>(y - x)));
      pair_check.record(through, std::min(pair_bound, divisor_bound), where(color, j, r));
    };
    if (all_pairs) {
      for (int j = 1; j <= n; ++j)
        for (int r = j + 1; r <= n; ++r) check_pair(j, r);
    } else if (n >= 2) {
      std::uniform_int_distribution<int> pick(1, n);
      for (std::size_t i = 0; i < kAuditPairSamplesPerColor; ++i) {
        int j = pick(rng);
        int r = pick(rng);
        if (j == r) continue;
        if (j > r) std::swap(j, r);
        check_pair(j, r);
      }
    }

    for (int j = 1; j < n; ++j) {
      const std::int64_t anchor = a[static_cast<std::size_t>(j - 1)];
      for (int s = 1; s <= static_cast<int>(profile.blocks.size()); ++s) {
        const Block& block = profile.blocks[static_cast<std::size_t>(s - 1)];
        if (block.last <= j) continue;  // no r > j in this block
        const BinaryMatrix mat = build_divisibility_matrix(profile, j, s);
        ++report.matrices_built;
        const std::int64_t ones = mat.ones();
        const int q = max_common_rows(mat);
        if (all_pairs) report.matrix_stats.push_back({color, j, s, ones, q});

        // Distinct AP(k) through a_j and some a_r, r > j, in block s.
        std::vector<std::pair<std::int64_t, std::int64_t>> aps;
        for (int r = std::max(block.first, j + 1); r <= block.last; ++r) {
          for_each_ap_through_pair(anchor, a[static_cast<std::size_t>(r - 1)], k, m,
                                   [&](std::int64_t first, std::int64_t d) { aps.emplace_back(first, d); });
        }
        std::sort(aps.begin(), aps.end());
        aps.erase(std::unique(aps.begin(), aps.end()), aps.end());
        const std::string cell = where(color, j) + ", s=" + std::to_string(s);
        ones_check.record(static_cast<std::int64_t>(aps.size()), k * ones, cell);

        // A common one-row x of columns r < r' divides a_r' - a_r.
        for (int y = 1; y <= block.size(); ++y) {
          const int r = block.first + y - 1;
          if (r <= j) continue;
          for (int y2 = y + 1; y2 <= block.size(); ++y2) {
            const int r2 = block.first + y2 - 1;
            std::int64_t common = 0;
            for (int x = 0; x < k - 1; ++x) common += (mat.at(x, y - 1) && mat.at(x, y2 - 1)) ? 1 : 0;
            const std::int64_t allowed =
                count_small_divisors(a[static_cast<std::size_t>(r2 - 1)] - a[static_cast<std::size_t>(r - 1)], k - 1);
            column_check.record(common, allowed,
                                cell + ", columns " + std::to_string(y) + "," + std::to_string(y2));
          }
        }

        // A^s avoids R_{q+1,2}; KST caps its ones (floating point, informational).
        if (block.size() >= 2) {
          kst_check.record_real(ones, kst_bound(k - 1, block.size(), std::max(q + 1, 2), 2), cell);
        }
      }
    }
    report.profiles.push_back(std::move(profile));
  }

  // Global accounting over all AP(k) in [t*n].
  const std::uint64_t total = count_aps_formula(m, k);
  const std::uint64_t non_rainbow = count_non_rainbow(c, k);
  std::uint64_t rainbow = 0;
  if (m >= k) {
    for_each_ap(m, k, [&](const ArithmeticProgression& ap) {
      if (is_rainbow(c, ap).is_rainbow) ++rainbow;
    });
  }
  const auto non_rainbow_bound = static_cast<std::int64_t>(
      static_cast<std::uint64_t>(t) * choose2(static_cast<std::uint64_t>(k)) *
      choose2(static_cast<std::uint64_t>(n)));

  CheckAccumulator non_rainbow_check("non_rainbow_bound", Relation::less_equal);
  non_rainbow_check.record(static_cast<std::int64_t>(non_rainbow), non_rainbow_bound, "all colors");
  CheckAccumulator identity_check("rainbow_accounting_identity", Relation::equal);
  identity_check.record(static_cast<std::int64_t>(rainbow + non_rainbow),
                        static_cast<std::int64_t>(total), "rainbow + non-rainbow = all AP(k)");
  CheckAccumulator rainbow_floor("rainbow_count_lower_bound", Relation::greater_equal);
  rainbow_floor.record(static_cast<std::int64_t>(rainbow),
                       static_cast<std::int64_t>(total) - non_rainbow_bound,
                       "rainbow >= all AP(k) - t*C(k,2)*C(n,2)");

  CheckAccumulator few_colors("t_below_k_cubed", Relation::less, true);
  few_colors.record(t, static_cast<std::int64_t>(k) * k * k, "proof assumes t < k^3");
  CheckAccumulator short_classes("n_at_most_k", Relation::less_equal, true);
  short_classes.record(n, k, "case split on n <= k");

  for (auto* acc : {&wide_pigeonhole, &wide_blocks, &pair_check, &ones_check, &column_check,
                    &non_rainbow_check, &identity_check, &rainbow_floor, &kst_check, &few_colors,
                    &short_classes}) {
    AuditCheck check = std::move(*acc).finish();
    if (check.instances == 0) continue;
    if (!check.informational && !check.pass) report.pass = false;
    report.checks.push_back(std::move(check));
  }
  return report;
}

namespace {

nlohmann::json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

}  // namespace

nlohmann::json to_json(const ColorClassProfile& p) {
  nlohmann::json j;
  j["color"] = p.color;
  j["positions"] = p.positions;
  j["gaps"] = p.gaps;
  j["wide_gap_indices"] = p.wide_gap_indices;
  j["blocks"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    j["blocks"].push_back({{"first", p.blocks[i].first},
                           {"last", p.blocks[i].last},
                           {"wide", static_cast<bool>(p.wide_block_flags[i])}});
  }
  return j;
}

nlohmann::json to_json(const AuditReport& report) {
  nlohmann::json j;
  j["params"] = {{"k", report.k}, {"t", report.t}, {"n", report.n}, {"W", report.wide_threshold}};
  j["checks"] = nlohmann::json::array();
  for (const AuditCheck& c : report.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["lhs"] = rational_json(c.lhs);
    cj["rhs"] = c.rhs_real ? nlohmann::json(*c.rhs_real) : rational_json(c.rhs);
    cj["relation"] = to_string(c.relation);
    cj["pass"] = c.pass;
    cj["informational"] = c.informational;
    cj["instances"] = c.instances;
    cj["detail"] = c.detail;
    j["checks"].push_back(std::move(cj));
  }
  j["pass"] = report.pass;
  j["profiles"] = nlohmann::json::array();
  for (const auto& p : report.profiles) j["profiles"].push_back(to_json(p));
  j["matrices_built"] = report.matrices_built;
  j["matrix_stats"] = nlohmann::json::array();
  for (const auto& s : report.matrix_stats) {
    j["matrix_stats"].push_back({{"color", s.color},
                                 {"j", s.j},
                                 {"s", s.s},
                                 {"ones", s.ones},
                                 {"max_common_rows", s.max_common_rows}});
  }
  return j;
}

}  // namespace rainbow
