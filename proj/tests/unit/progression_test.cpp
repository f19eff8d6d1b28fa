#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/number_theory.hpp"
#include "rainbow/progression.hpp"

namespace rainbow {
namespace {

using AP = ArithmeticProgression;

TEST(EnumerateAps, SmallExamples) {
  EXPECT_EQ(enumerate_aps(4, 3), (std::vector<AP>{{1, 1, 3}, {2, 1, 3}}));
  EXPECT_EQ(enumerate_aps(3, 3), (std::vector<AP>{{1, 1, 3}}));
  EXPECT_TRUE(enumerate_aps(2, 3).empty());
}

TEST(EnumerateAps, SortedByDiffThenFirst) {
  const auto aps = enumerate_aps(30, 4);
  for (std::size_t i = 1; i < aps.size(); ++i) {
    const auto& a = aps[i - 1];
    const auto& b = aps[i];
    EXPECT_TRUE(a.diff < b.diff || (a.diff == b.diff && a.first < b.first));
    EXPECT_LE(b.last(), 30);
  }
}

TEST(EnumerateAps, Guards) {
  EXPECT_THROW(enumerate_aps(kEnumerationGuard + 1, 3), GuardViolation);
  EXPECT_THROW(enumerate_aps(10, 2), std::invalid_argument);
  EXPECT_THROW(enumerate_aps(0, 3), std::invalid_argument);
}

TEST(CountApsFormula, Examples) {
  EXPECT_EQ(count_aps_formula(10, 3), 20u);
  EXPECT_EQ(count_aps_formula(4, 3), 2u);
  for (int k = 3; k <= 40; ++k) EXPECT_EQ(count_aps_formula(k, k), 1u) << k;
  EXPECT_EQ(count_aps_formula(2, 3), 0u);
  EXPECT_EQ(count_aps_formula(1, 5), 0u);
}

TEST(CountApsFormula, Decomposition) {
  const auto dec = decompose_ap_count(10, 3);
  EXPECT_EQ(dec.a, 5);
  EXPECT_EQ(dec.b, 0);
  EXPECT_EQ(dec.count, 20u);
  const auto dec2 = decompose_ap_count(23, 5);  // 23 = 5*4 + 3
  EXPECT_EQ(dec2.a, 5);
  EXPECT_EQ(dec2.b, 3);
  EXPECT_EQ(dec2.count, 3u * 15u + 1u * 10u);
}

TEST(CountApsFormula, OverflowGuard) {
  EXPECT_NO_THROW(count_aps_formula(kFormulaGuard, 3));
  EXPECT_THROW(count_aps_formula(kFormulaGuard + 1, 3), GuardViolation);
  // m = 2^31, k = 3: a = 2^30, b = 0, count = 2 * C(2^30, 2).
  const std::uint64_t a = std::uint64_t{1} << 30;
  EXPECT_EQ(count_aps_formula(kFormulaGuard, 3), 2 * (a * (a - 1) / 2));
}

TEST(CountApsFormula, MatchesBruteForceAndEnumeration) {
  for (int k = 3; k <= 8; ++k) {
    for (std::int64_t m = 1; m <= 120; ++m) {
      const auto expected = oracle::all_aps(m, k).size();
      ASSERT_EQ(count_aps_formula(m, k), expected) << "m=" << m << " k=" << k;
      ASSERT_EQ(enumerate_aps(m, k).size(), expected);
    }
  }
}

TEST(CountApsFormula, NondecreasingInM) {
  for (int k = 3; k <= 10; ++k) {
    std::uint64_t prev = 0;
    for (std::int64_t m = 1; m <= 400; ++m) {
      const auto c = count_aps_formula(m, k);
      ASSERT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(ApCountLowerBound, Examples) {
  EXPECT_EQ(ap_count_lower_bound(10, 3), Rational(10));
  EXPECT_EQ(ap_count_lower_bound(6, 3), Rational(0));
  EXPECT_EQ(ap_count_lower_bound(1, 3), Rational(-5, 4));
  EXPECT_EQ(ap_count_lower_bound(1, 3).str(), "-5/4");
}

TEST(ApCountLowerBound, StrictlyBelowCount) {
  for (int k = 3; k <= 8; ++k)
    for (std::int64_t m = 1; m <= 500; ++m)
      ASSERT_GT(Rational(static_cast<std::int64_t>(count_aps_formula(m, k))), ap_count_lower_bound(m, k))
          << "m=" << m << " k=" << k;
}

TEST(CountApsThroughPair, Examples) {
  EXPECT_EQ(count_aps_through_pair(1, 2, 3, 4), 1u);
  EXPECT_EQ(count_aps_through_pair(1, 4, 3, 9), 1u);
  EXPECT_EQ(count_aps_through_pair(1, 100, 3, 100), 0u);
}

TEST(CountApsThroughPair, RejectsBadPairs) {
  EXPECT_THROW(count_aps_through_pair(3, 3, 3, 10), std::invalid_argument);
  EXPECT_THROW(count_aps_through_pair(4, 2, 3, 10), std::invalid_argument);
  EXPECT_THROW(count_aps_through_pair(1, 11, 3, 10), std::invalid_argument);
}

TEST(CountApsThroughPair, AgreesWithOracleAndBounds) {
  for (int k = 3; k <= 6; ++k) {
    for (std::int64_t m = 2; m <= 30; ++m) {
      for (std::int64_t x = 1; x <= m; ++x) {
        for (std::int64_t y = x + 1; y <= m; ++y) {
          const auto c = count_aps_through_pair(x, y, k, m);
          ASSERT_EQ(c, oracle::aps_through(x, y, k, m)) << x << "," << y << " k=" << k << " m=" << m;
          ASSERT_LE(c, choose2(static_cast<std::uint64_t>(k)));
          ASSERT_LE(c, static_cast<std::uint64_t>(k) * tau(static_cast<std::uint64_t>(y - x)));
        }
      }
    }
  }
}

TEST(ForEachApThroughPair, VisitsDistinctProgressionsContainingBoth) {
  std::vector<std::pair<std::int64_t, std::int64_t>> seen;
  for_each_ap_through_pair(5, 11, 4, 40, [&](std::int64_t f, std::int64_t d) { seen.emplace_back(f, d); });
  for (const auto& [f, d] : seen) {
    const oracle::Ap ap{f, d};
    EXPECT_TRUE(oracle::ap_has_term(ap, 4, 5));
    EXPECT_TRUE(oracle::ap_has_term(ap, 4, 11));
  }
  auto sorted = seen;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::unique(sorted.begin(), sorted.end()), sorted.end());
}

}  // namespace
}  // namespace rainbow
