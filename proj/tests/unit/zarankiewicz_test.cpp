#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/matrix.hpp"
#include "rainbow/zarankiewicz.hpp"

namespace rainbow {
namespace {

using Backend = ZarankiewiczBackend;

TEST(KstBound, Examples) {
  EXPECT_NEAR(kst_bound(3, 3, 2, 2), 6.4641016151377544, 1e-12);
  EXPECT_NEAR(kst_bound(4, 4, 2, 2), 10.0, 1e-12);
  EXPECT_NEAR(kst_bound(2, 2, 2, 2), 2.0 + std::sqrt(2.0) * 1.0, 1e-12);
  EXPECT_THROW(kst_bound(1, 3, 2, 2), std::invalid_argument);
  EXPECT_THROW(kst_bound(3, 3, 2, 1), std::invalid_argument);
}

TEST(ExactZarankiewicz, Examples) {
  EXPECT_EQ(exact_zarankiewicz(3, 3, 2, 2).exact_value, 6);
  EXPECT_EQ(exact_zarankiewicz(4, 4, 2, 2).exact_value, 9);
  EXPECT_EQ(exact_zarankiewicz(2, 2, 2, 2).exact_value, 3);
  EXPECT_EQ(exact_zarankiewicz(2, 5, 3, 2).exact_value, 10);
}

TEST(ExactZarankiewicz, SquareSequence) {
  const std::int64_t expected[] = {3, 6, 9, 12, 16, 21, 24, 29};
  for (int n = 2; n <= 9; ++n) {
    const auto r = exact_zarankiewicz(n, n, 2, 2);
    EXPECT_EQ(r.exact_value, expected[n - 2]) << n;
    EXPECT_EQ(r.witness.ones(), r.exact_value);
    EXPECT_FALSE(contains_all_ones_pattern(r.witness, 2, 2));
  }
}

TEST(ExactZarankiewicz, AgreesWithBruteForce) {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      for (int s = 1; s <= 3; ++s)
        for (int t = 1; t <= 3; ++t) {
          const auto r = exact_zarankiewicz(m, n, s, t, Backend::exhaustive);
          EXPECT_EQ(r.exact_value, oracle::brute_force_zarankiewicz(m, n, s, t))
              << m << "x" << n << " R" << s << "," << t;
          EXPECT_EQ(r.witness.rows(), m);
          EXPECT_EQ(r.witness.cols(), n);
          EXPECT_EQ(r.witness.ones(), r.exact_value);
          EXPECT_FALSE(contains_all_ones_pattern(r.witness, s, t));
        }
}

TEST(ExactZarankiewicz, BackendsAgree) {
  for (int m = 2; m <= 9; ++m)
    for (int n = 2; n <= 9 && m * n <= kExhaustiveCellGuard; ++n)
      for (const auto& [s, t] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}}) {
        const auto a = exact_zarankiewicz(m, n, s, t, Backend::exhaustive);
        const auto b = exact_zarankiewicz(m, n, s, t, Backend::branch_and_bound);
        EXPECT_EQ(a.exact_value, b.exact_value) << m << "x" << n << " R" << s << "," << t;
        EXPECT_EQ(b.witness.ones(), b.exact_value);
        EXPECT_FALSE(contains_all_ones_pattern(b.witness, s, t));
      }
}

TEST(ExactZarankiewicz, WideInstances) {
  const auto a = exact_zarankiewicz(6, 12, 3, 2);
  const auto b = exact_zarankiewicz(12, 6, 2, 3);
  EXPECT_EQ(a.exact_value, b.exact_value);
  EXPECT_FALSE(contains_all_ones_pattern(a.witness, 3, 2));
  EXPECT_EQ(exact_zarankiewicz(12, 6, 2, 2).exact_value, 25);
  EXPECT_EQ(exact_zarankiewicz(6, 12, 2, 2).exact_value, 25);
}

TEST(ExactZarankiewicz, Monotone) {
  for (int m = 2; m <= 5; ++m)
    for (int n = 2; n <= 5; ++n) {
      const auto base = exact_zarankiewicz(m, n, 2, 2).exact_value;
      EXPECT_LE(base, exact_zarankiewicz(m + 1, n, 2, 2).exact_value);
      EXPECT_LE(base, exact_zarankiewicz(m, n + 1, 2, 2).exact_value);
      EXPECT_LE(base, exact_zarankiewicz(m, n, 3, 2).exact_value);
      EXPECT_EQ(base, exact_zarankiewicz(n, m, 2, 2).exact_value);
      EXPECT_LE(static_cast<double>(base), kst_bound(m, n, 2, 2) + kKstSlack);
    }
}

TEST(ExactZarankiewicz, PatternLargerThanMatrix) {
  const auto r = exact_zarankiewicz(3, 4, 4, 2);
  EXPECT_EQ(r.exact_value, 12);
  EXPECT_EQ(r.witness.ones(), 12);
}

TEST(ExactZarankiewicz, Guards) {
  EXPECT_THROW(exact_zarankiewicz(7, 7, 3, 3), GuardViolation);
  EXPECT_THROW(exact_zarankiewicz(13, 3, 2, 2), GuardViolation);
  EXPECT_THROW(exact_zarankiewicz(5, 5, 3, 3, Backend::branch_and_bound), GuardViolation);
  EXPECT_THROW(exact_zarankiewicz(8, 8, 2, 2, Backend::exhaustive), GuardViolation);
  EXPECT_THROW(exact_zarankiewicz(0, 3, 2, 2), std::invalid_argument);
}

TEST(ExactZarankiewicz, Json) {
  const auto j = to_json(exact_zarankiewicz(3, 3, 2, 2));
  EXPECT_EQ(j["exact_value"], 6);
  EXPECT_NEAR(j["kst_upper"].get<double>(), 6.4641016, 1e-6);
  EXPECT_EQ(j["witness"].size(), 3u);
}

}  // namespace
}  // namespace rainbow
