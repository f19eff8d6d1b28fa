#include "rainbow/zarankiewicz.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

double kst_bound(int m, int n, int s, int t) {
  if (m < 2 || n < 2 || s < 2 || t < 2) {
    throw std::invalid_argument("kst_bound requires m, n, s, t >= 2");
  }
  const double inv_t = 1.0 / static_cast<double>(t);
  return std::pow(static_cast<double>(s - 1), inv_t) * static_cast<double>(n - t + 1) *
             std::pow(static_cast<double>(m), 1.0 - inv_t) +
         static_cast<double>(t - 1) * static_cast<double>(m);
}

namespace {

// Rows of a `height` x `width` matrix as width-bit masks, bit (width-1)
// holding column 0 so integer order matches bit-string order.
BinaryMatrix from_row_masks(const std::vector<std::uint32_t>& rows, int width) {
  BinaryMatrix out(static_cast<int>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < width; ++c) out.set(static_cast<int>(r), c, (rows[r] >> (width - 1 - c)) & 1u);
  return out;
}

// Row multisets in non-increasing order; every candidate row is tested
// against the rows already placed for a copy of R_{rows_needed, cols_needed}.
// `support[T]` counts placed rows that contain column set T.
class ExhaustiveSolver {
 public:
  ExhaustiveSolver(int height, int width, int rows_needed, int cols_needed)
      : height_(height),
        width_(width),
        rows_needed_(rows_needed),
        cols_needed_(cols_needed),
        support_(std::size_t{1} << width, 0) {
    for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
      if (std::popcount(mask) == cols_needed) patterns_.push_back(mask);
    }
  }

  void solve() {
    rows_.clear();
    descend((1u << width_) - 1, 0);
  }

  [[nodiscard]] int best() const { return best_; }
  [[nodiscard]] const std::vector<std::uint32_t>& best_rows() const { return best_rows_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool creates_pattern(std::uint32_t row) const {
    for (const std::uint32_t p : patterns_) {
      if ((row & p) == p && support_[p] + 1 >= rows_needed_) return true;
    }
    return false;
  }

  void place(std::uint32_t row, int delta) {
    for (const std::uint32_t p : patterns_) {
      if ((row & p) == p) support_[p] += delta;
    }
  }

  void descend(std::uint32_t max_row, int ones) {
    const int placed = static_cast<int>(rows_.size());
    if (placed == height_) {
      if (ones > best_) {
        best_ = ones;
        best_rows_ = rows_;
      }
      return;
    }
    if (ones + (height_ - placed) * width_ <= best_) return;
    for (std::int64_t row = max_row; row >= 0; --row) {
      const auto r = static_cast<std::uint32_t>(row);
      ++nodes_;
      const int weight = std::popcount(r);
      if (ones + weight + (height_ - placed - 1) * width_ <= best_) continue;
      if (creates_pattern(r)) continue;
      place(r, +1);
      rows_.push_back(r);
      descend(r, ones + weight);
      rows_.pop_back();
      place(r, -1);
    }
  }

  int height_;
  int width_;
  int rows_needed_;
  int cols_needed_;
  std::vector<int> support_;
  std::vector<std::uint32_t> patterns_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> best_rows_;
  int best_ = -1;
  std::uint64_t nodes_ = 0;
};

// Pattern with two columns and `rows_needed` rows: every column pair may share
// at most rows_needed - 1 rows. Symmetry is broken double-lexicographically:
// rows are non-increasing as bit strings, and so are columns, which is
// enforced incrementally on columns whose prefixes are still equal.
class PairBoundSolver {
 public:
  PairBoundSolver(int height, int width, int rows_needed)
      : height_(height), width_(width), limit_(rows_needed - 1) {}

  void solve() {
    pair_ = {};
    spare_ = static_cast<std::int64_t>(limit_) * width_ * (width_ - 1) / 2;
    const std::uint32_t full = (1u << width_) - 1u;
    rows_.clear();
    descend(full, full & ~1u, 0);
  }

  [[nodiscard]] int best() const { return best_; }
  [[nodiscard]] const std::vector<std::uint32_t>& best_rows() const { return best_rows_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool fits(std::uint32_t row) const {
    for (int i = 0; i < width_; ++i) {
      if (!((row >> i) & 1u)) continue;
      for (int j = i + 1; j < width_; ++j) {
        if (((row >> j) & 1u) && pair_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= limit_) return false;
      }
    }
    return true;
  }

  void add(std::uint32_t row, int delta) {
    for (int i = 0; i < width_; ++i) {
      if (!((row >> i) & 1u)) continue;
      for (int j = i + 1; j < width_; ++j) {
        if ((row >> j) & 1u) {
          pair_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += delta;
          spare_ -= delta;
        }
      }
    }
  }

  // Max total weight of `rows` further rows of weight <= cap, given that a
  // row of weight w consumes C(w,2) units of the remaining pair capacity.
  // C(w,2) is convex, so a balanced split is optimal.
  int capacity_bound(int rows, int cap) const {
    if (rows <= 0) return 0;
    auto cost = [&](int total) {
      const std::int64_t a = total / rows;
      const std::int64_t b = total % rows;
      return b * ((a + 1) * a / 2) + (rows - b) * (a * (a - 1) / 2);
    };
    int lo = 0;
    int hi = rows * cap;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (cost(mid) <= spare_) lo = mid; else hi = mid - 1;
    }
    return lo;
  }

  // Rows that may still follow: at most `max_row` and compatible with the
  // pair counts so far. Later rows only shrink this set.
  void collect_candidates(std::uint32_t max_row, std::vector<std::uint32_t>& out) const {
    out.clear();
    for (std::int64_t row = max_row; row >= 0; --row) {
      const auto r = static_cast<std::uint32_t>(row);
      if (fits(r)) out.push_back(r);
    }
  }

  // Upper bound on the weight `rows` further rows can add: each is a
  // candidate; a candidate of weight >= 2 repeats at most `limit_` times.
  int lookahead_bound(const std::vector<std::uint32_t>& candidates, int rows) const {
    std::array<int, 33> by_weight{};
    for (const auto r : candidates) ++by_weight[static_cast<std::size_t>(std::popcount(r))];
    int left = rows;
    int total = 0;
    int cap = 0;
    for (int w = width_; w >= 0 && left > 0; --w) {
      const int have = by_weight[static_cast<std::size_t>(w)];
      if (have == 0) continue;
      cap = std::max(cap, w);
      const int take = w >= 2 ? std::min(left, have * std::max(limit_, 0)) : left;
      total += take * w;
      left -= take;
    }
    return std::min(total, capacity_bound(rows, cap));
  }

  // `tied` has bit p set when the columns at bit positions p and p-1 agree
  // on every row placed so far.
  void descend(std::uint32_t max_row, std::uint32_t tied, int ones) {
    const int placed = static_cast<int>(rows_.size());
    if (placed == height_) {
      if (ones > best_) {
        best_ = ones;
        best_rows_ = rows_;
      }
      return;
    }
    if (ones + capacity_bound(height_ - placed, width_) <= best_) return;
    std::vector<std::uint32_t> candidates;
    collect_candidates(max_row, candidates);
    if (ones + lookahead_bound(candidates, height_ - placed) <= best_) return;
    for (const auto r : candidates) {
      ++nodes_;
      if (tied & ~r & (r << 1)) continue;  // a tied column pair would become increasing
      const int weight = std::popcount(r);
      add(r, +1);
      if (ones + weight + capacity_bound(height_ - placed - 1, width_) > best_) {
        rows_.push_back(r);
        descend(r, tied & ~(r ^ (r << 1)), ones + weight);
        rows_.pop_back();
      }
      add(r, -1);
    }
  }

  int height_;
  int width_;
  int limit_;
  std::int64_t spare_ = 0;
  std::array<std::array<int, kBranchAndBoundSideGuard>, kBranchAndBoundSideGuard> pair_{};
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> best_rows_;
  int best_ = -1;
  std::uint64_t nodes_ = 0;
};

// Same pattern as PairBoundSolver, searched column by column: pick `width`
// columns (height-bit masks) whose pairwise overlaps are at most
// rows_needed - 1. Cheaper when the matrix is wider than it is tall.
class ColumnPackingSolver {
 public:
  ColumnPackingSolver(int height, int width, int rows_needed)
      : height_(height), width_(width), limit_(rows_needed - 1) {}

  void solve() {
    const std::uint32_t full = (1u << height_) - 1u;
    cols_.clear();
    descend(full, full & ~1u, 0);
  }

  [[nodiscard]] int best() const { return best_; }
  [[nodiscard]] const std::vector<std::uint32_t>& best_cols() const { return best_cols_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool fits(std::uint32_t col) const {
    return std::all_of(cols_.begin(), cols_.end(),
                       [&](std::uint32_t c) { return std::popcount(c & col) <= limit_; });
  }

  // Top `count` candidate weights; a column heavier than limit_ cannot be
  // repeated (it would overlap its copy in too many rows).
  int lookahead_bound(const std::vector<std::uint32_t>& candidates, int count) const {
    std::array<int, 33> by_weight{};
    for (const auto c : candidates) ++by_weight[static_cast<std::size_t>(std::popcount(c))];
    int left = count;
    int total = 0;
    for (int w = height_; w >= 0 && left > 0; --w) {
      const int have = by_weight[static_cast<std::size_t>(w)];
      if (have == 0) continue;
      const int take = w > limit_ ? std::min(left, have) : left;
      total += take * w;
      left -= take;
    }
    return total;
  }

  void descend(std::uint32_t max_col, std::uint32_t tied, int ones) {
    const int placed = static_cast<int>(cols_.size());
    if (placed == width_) {
      if (ones > best_) {
        best_ = ones;
        best_cols_ = cols_;
      }
      return;
    }
    std::vector<std::uint32_t> candidates;
    for (std::int64_t col = max_col; col >= 0; --col) {
      const auto c = static_cast<std::uint32_t>(col);
      if (fits(c)) candidates.push_back(c);
    }
    if (ones + lookahead_bound(candidates, width_ - placed) <= best_) return;
    for (const auto c : candidates) {
      ++nodes_;
      if (tied & ~c & (c << 1)) continue;
      const int weight = std::popcount(c);
      cols_.push_back(c);
      descend(c, tied & ~(c ^ (c << 1)), ones + weight);
      cols_.pop_back();
    }
  }

  int height_;
  int width_;
  int limit_;
  std::vector<std::uint32_t> cols_;
  std::vector<std::uint32_t> best_cols_;
  int best_ = -1;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExtremalResult exact_zarankiewicz(int m, int n, int s, int t, ZarankiewiczBackend backend) {
  if (m < 1 || n < 1 || s < 1 || t < 1) {
    throw std::invalid_argument("exact_zarankiewicz requires m, n, s, t >= 1");
  }
  const bool pair_shaped = (s == 2 || t == 2) && m <= kBranchAndBoundSideGuard &&
                           n <= kBranchAndBoundSideGuard;
  if (backend == ZarankiewiczBackend::automatic) {
    backend = pair_shaped ? ZarankiewiczBackend::branch_and_bound : ZarankiewiczBackend::exhaustive;
  }
  if (backend == ZarankiewiczBackend::exhaustive && m * n > kExhaustiveCellGuard) {
    throw GuardViolation("exhaustive backend needs m*n <= 36, got " + std::to_string(m * n));
  }
  if (backend == ZarankiewiczBackend::branch_and_bound && !pair_shaped) {
    throw GuardViolation("branch-and-bound backend needs s == 2 or t == 2 and m, n <= 12");
  }

  ExtremalResult result;
  result.m = m;
  result.n = n;
  result.s = s;
  result.t = t;
  if (m >= 2 && n >= 2 && s >= 2 && t >= 2) result.kst_upper = kst_bound(m, n, s, t);

  if (s > m || t > n) {
    result.exact_value = static_cast<std::int64_t>(m) * n;
    result.witness = BinaryMatrix(m, n, std::vector<std::uint8_t>(static_cast<std::size_t>(m * n), 1));
    return result;
  }

  // Orient the instance as `height` rows of `width`-bit masks, with the
  // forbidden pattern spanning `rows_needed` rows and `cols_needed` columns.
  bool transposed = false;
  std::vector<std::uint32_t> rows;
  int width = n;
  if (backend == ZarankiewiczBackend::exhaustive) {
    transposed = n > m;
    const int height = transposed ? n : m;
    width = transposed ? m : n;
    ExhaustiveSolver solver(height, width, transposed ? t : s, transposed ? s : t);
    solver.solve();
    result.exact_value = solver.best();
    result.nodes = solver.nodes();
    rows = solver.best_rows();
  } else {
    transposed = t != 2;  // R_{2,t} in A is R_{t,2} in A^T
    if (s == 2 && t == 2) transposed = n > m;
    const int height = transposed ? n : m;
    width = transposed ? m : n;
    const int rows_needed = transposed ? t : s;
    if (width > height) {
      ColumnPackingSolver solver(height, width, rows_needed);
      solver.solve();
      result.exact_value = solver.best();
      result.nodes = solver.nodes();
      BinaryMatrix witness = from_row_masks(solver.best_cols(), height).transpose();
      if (transposed) witness = witness.transpose();
      result.witness = canonical_form(witness);
      return result;
    }
    PairBoundSolver solver(height, width, rows_needed);
    solver.solve();
    result.exact_value = solver.best();
    result.nodes = solver.nodes();
    rows = solver.best_rows();
  }
  BinaryMatrix witness = from_row_masks(rows, width);
  if (transposed) witness = witness.transpose();
  result.witness = canonical_form(witness);
  return result;
}

nlohmann::json to_json(const ExtremalResult& result) {
  nlohmann::json j;
  j["m"] = result.m;
  j["n"] = result.n;
  j["s"] = result.s;
  j["t"] = result.t;
  j["exact_value"] = result.exact_value;
  j["kst_upper"] = result.kst_upper ? nlohmann::json(*result.kst_upper) : nlohmann::json(nullptr);
  j["witness"] = matrix_rows(result.witness);
  return j;
}

}  // namespace rainbow
