#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rainbow {

/// Dense 0-1 matrix, row-major, indices 0-based.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols);
  /// Throws std::invalid_argument unless bits.size() == rows*cols and every entry is 0 or 1.
  BinaryMatrix(int rows, int cols, std::vector<std::uint8_t> bits);

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] bool at(int r, int c) const { return bits_[index(r, c)] != 0; }
  void set(int r, int c, bool v) { bits_[index(r, c)] = v ? 1 : 0; }
  [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  [[nodiscard]] std::int64_t ones() const;
  [[nodiscard]] BinaryMatrix transpose() const;

  /// Column c as a bitset over rows, 64 rows per word.
  [[nodiscard]] std::vector<std::uint64_t> column_bits(int c) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  [[nodiscard]] std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Text format: "m n" on the first line, then m lines of n characters in {0,1}.
BinaryMatrix parse_matrix_text(const std::string& text);
std::string format_matrix_text(const BinaryMatrix& a);

/// Rows as strings of '0'/'1', for JSON.
std::vector<std::string> matrix_rows(const BinaryMatrix& a);

/// Rows sorted descending as bit strings, then columns sorted the same way.
BinaryMatrix canonical_form(const BinaryMatrix& a);

/// True iff some s rows and t columns meet only in ones (A contains R_{s,t}).
bool contains_all_ones_pattern(const BinaryMatrix& a, int s, int t);

/// Max number of shared one-rows over all column pairs; 0 for fewer than 2 columns.
int max_common_rows(const BinaryMatrix& a);

}  // namespace rainbow
