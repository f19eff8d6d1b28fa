#include <gtest/gtest.h>

#include <random>

#include "rainbow/error.hpp"
#include "rainbow/matrix.hpp"

namespace rainbow {
namespace {

BinaryMatrix from_mask(int m, int n, std::uint64_t mask) {
  BinaryMatrix a(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) a.set(r, c, (mask >> (r * n + c)) & 1u);
  return a;
}

BinaryMatrix random_matrix(std::mt19937_64& rng, int m, int n, double p) {
  std::bernoulli_distribution bit(p);
  BinaryMatrix a(m, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) a.set(r, c, bit(rng));
  return a;
}

TEST(BinaryMatrix, Basics) {
  const BinaryMatrix a(2, 3, {1, 0, 1, 0, 1, 1});
  EXPECT_EQ(a.ones(), 4);
  EXPECT_TRUE(a.at(0, 2));
  EXPECT_FALSE(a.at(1, 0));
  const auto t = a.transpose();
  EXPECT_EQ(t.rows(), 3);
  EXPECT_EQ(t.cols(), 2);
  EXPECT_TRUE(t.at(2, 1));
  EXPECT_EQ(t.transpose(), a);
  EXPECT_THROW(BinaryMatrix(2, 2, {1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(BinaryMatrix(1, 2, {1, 2}), std::invalid_argument);
}

TEST(ContainsPattern, Examples) {
  const BinaryMatrix ones(2, 2, {1, 1, 1, 1});
  EXPECT_TRUE(contains_all_ones_pattern(ones, 2, 2));
  const BinaryMatrix eye(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  EXPECT_FALSE(contains_all_ones_pattern(eye, 2, 2));
  EXPECT_TRUE(contains_all_ones_pattern(eye, 1, 1));
  const BinaryMatrix six(3, 3, {1, 1, 0, 1, 0, 1, 0, 1, 1});
  EXPECT_FALSE(contains_all_ones_pattern(six, 2, 2));
  EXPECT_EQ(max_common_rows(six), 1);
  EXPECT_FALSE(contains_all_ones_pattern(six, 4, 1));
}

TEST(ContainsPattern, TransposeSymmetryExhaustive) {
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      const std::uint64_t count = std::uint64_t{1} << (m * n);
      const std::uint64_t step = count > 4096 ? count / 4096 + 1 : 1;
      for (std::uint64_t mask = 0; mask < count; mask += step) {
        const auto a = from_mask(m, n, mask);
        const auto at = a.transpose();
        for (int s = 1; s <= 3; ++s)
          for (int t = 1; t <= 3; ++t)
            ASSERT_EQ(contains_all_ones_pattern(a, s, t), contains_all_ones_pattern(at, t, s));
      }
    }
}

TEST(ContainsPattern, ColumnPairCharacterisation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 11);
    const int n = 2 + static_cast<int>(rng() % 11);
    const auto a = random_matrix(rng, m, n, 0.3 + 0.05 * static_cast<double>(trial % 8));
    for (int s = 1; s <= 4; ++s)
      EXPECT_EQ(contains_all_ones_pattern(a, s, 2), max_common_rows(a) >= s);
  }
}

TEST(CanonicalForm, PreservesOnesAndPattern) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6), 0.5);
    const auto c = canonical_form(a);
    EXPECT_EQ(c.ones(), a.ones());
    EXPECT_EQ(canonical_form(c).ones(), c.ones());
    EXPECT_EQ(contains_all_ones_pattern(c, 2, 2), contains_all_ones_pattern(a, 2, 2));
  }
}

TEST(MatrixText, RoundTripAndErrors) {
  const auto a = parse_matrix_text("2 3\n101\n011\n");
  EXPECT_EQ(a, BinaryMatrix(2, 3, {1, 0, 1, 0, 1, 1}));
  EXPECT_EQ(parse_matrix_text(format_matrix_text(a)), a);
  EXPECT_EQ(matrix_rows(a), (std::vector<std::string>{"101", "011"}));
  EXPECT_THROW(parse_matrix_text("2 3\n101\n"), ValidationError);
  EXPECT_THROW(parse_matrix_text("2 3\n101\n0121\n"), ValidationError);
  EXPECT_THROW(parse_matrix_text("2 3\n101\n012\n"), ValidationError);
  EXPECT_THROW(parse_matrix_text("x"), ValidationError);
}

}  // namespace
}  // namespace rainbow
