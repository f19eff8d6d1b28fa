#include "rainbow/matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rainbow/error.hpp"

namespace rainbow {

BinaryMatrix::BinaryMatrix(int rows, int cols)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
  bits_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

BinaryMatrix::BinaryMatrix(int rows, int cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
  if (bits_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("matrix needs exactly rows*cols entries");
  }
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw std::invalid_argument("matrix entries must be 0 or 1");
  }
}

std::int64_t BinaryMatrix::ones() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  return out;
}

std::vector<std::uint64_t> BinaryMatrix::column_bits(int c) const {
  std::vector<std::uint64_t> words(static_cast<std::size_t>((rows_ + 63) / 64), 0);
  for (int r = 0; r < rows_; ++r) {
    if (at(r, c)) words[static_cast<std::size_t>(r / 64)] |= std::uint64_t{1} << (r % 64);
  }
  return words;
}

BinaryMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  int m = 0;
  int n = 0;
  if (!(in >> m >> n) || m < 1 || n < 1) {
    throw ValidationError("matrix text: first line must be \"m n\" with m, n >= 1");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int r = 0; r < m; ++r) {
    std::string row;
    if (!(in >> row)) throw ValidationError("matrix text: expected " + std::to_string(m) + " rows");
    if (static_cast<int>(row.size()) != n) {
      throw ValidationError("matrix text: row " + std::to_string(r + 1) + " has " +
                            std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    }
    for (const char ch : row) {
      if (ch != '0' && ch != '1') {
        throw ValidationError("matrix text: row " + std::to_string(r + 1) +
                              " contains a character other than 0/1");
      }
      bits.push_back(ch == '1' ? 1 : 0);
    }
  }
  std::string extra;
  if (in >> extra) throw ValidationError("matrix text: trailing data after row " + std::to_string(m));
  return BinaryMatrix(m, n, std::move(bits));
}

std::vector<std::string> matrix_rows(const BinaryMatrix& a) {
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(a.rows()));
  for (int r = 0; r < a.rows(); ++r) {
    std::string line;
    for (int c = 0; c < a.cols(); ++c) line.push_back(a.at(r, c) ? '1' : '0');
    rows.push_back(std::move(line));
  }
  return rows;
}

std::string format_matrix_text(const BinaryMatrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (const auto& row : matrix_rows(a)) out += row + "\n";
  return out;
}

BinaryMatrix canonical_form(const BinaryMatrix& a) {
  auto rows = matrix_rows(a);
  std::sort(rows.begin(), rows.end(), std::greater<>());
  std::vector<std::string> cols(static_cast<std::size_t>(a.cols()));
  for (const auto& row : rows)
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(row[c]);
  std::sort(cols.begin(), cols.end(), std::greater<>());
  BinaryMatrix out(a.rows(), a.cols());
  for (int c = 0; c < a.cols(); ++c)
    for (int r = 0; r < a.rows(); ++r)
      out.set(r, c, cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] == '1');
  return out;
}

namespace {

int popcount(const std::vector<std::uint64_t>& words) {
  int total = 0;
  for (const auto w : words) total += std::popcount(w);
  return total;
}

// Extend a set of `chosen` columns (all > `from`) whose common rows are `common`.
bool extend_columns(const std::vector<std::vector<std::uint64_t>>& columns, int from, int chosen,
                    int s, int t, const std::vector<std::uint64_t>& common) {
  if (chosen == t) return true;
  const int n = static_cast<int>(columns.size());
  for (int c = from; c <= n - (t - chosen); ++c) {
    std::vector<std::uint64_t> next(common.size());
    for (std::size_t w = 0; w < next.size(); ++w) next[w] = common[w] & columns[static_cast<std::size_t>(c)][w];
    if (popcount(next) < s) continue;
    if (extend_columns(columns, c + 1, chosen + 1, s, t, next)) return true;
  }
  return false;
}

}  // namespace

bool contains_all_ones_pattern(const BinaryMatrix& a, int s, int t) {
  if (s < 1 || t < 1) throw std::invalid_argument("pattern dimensions must be >= 1");
  if (s > a.rows() || t > a.cols()) return false;
  std::vector<std::vector<std::uint64_t>> columns;
  columns.reserve(static_cast<std::size_t>(a.cols()));
  for (int c = 0; c < a.cols(); ++c) columns.push_back(a.column_bits(c));
  std::vector<std::uint64_t> all(static_cast<std::size_t>((a.rows() + 63) / 64), ~std::uint64_t{0});
  if (a.rows() % 64 != 0) all.back() = (std::uint64_t{1} << (a.rows() % 64)) - 1;
  return extend_columns(columns, 0, 0, s, t, all);
}

int max_common_rows(const BinaryMatrix& a) {
  std::vector<std::vector<std::uint64_t>> columns;
  for (int c = 0; c < a.cols(); ++c) columns.push_back(a.column_bits(c));
  int best = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      int shared = 0;
      for (std::size_t w = 0; w < columns[i].size(); ++w) shared += std::popcount(columns[i][w] & columns[j][w]);
      best = std::max(best, shared);
    }
  }
  return best;
}

}  // namespace rainbow
