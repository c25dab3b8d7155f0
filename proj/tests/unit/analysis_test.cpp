#include <gtest/gtest.h>

#include <random>

#include "kbonacci/analysis.hpp"
#include "kbonacci/binet.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/exact.hpp"
#include "support/oracles.hpp"

namespace kstep {
namespace {

std::string abs_error_3dp(const ErrorRow& row) { return row.error.abs().midpoint().to_fixed(3); }

TEST(ErrorTableTest, OrderSixChart) {
  const std::vector<ErrorRow> rows = error_table(6, 0, 7, 64);
  const char* chart[] = {"0.263", "0.478", "0.035", "0.053", "0.072", "0.078", "0.023", "0.218"};
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, static_cast<long>(i));
    EXPECT_EQ(abs_error_3dp(rows[i]), chart[i]) << "n=" << i;
  }
}

// The printed chart has .277 at n = 1; 1 - phi / sqrt 5 = 0.27639... rounds to .276.
TEST(ErrorTableTest, FibonacciChart) {
  const std::vector<ErrorRow> rows = error_table(2, 0, 6, 64);
  const char* chart[] = {"0.447", "0.276", "0.171", "0.106", "0.065", "0.040", "0.025"};
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(abs_error_3dp(rows[i]), chart[i]) << "n=" << i;

  const BigFloat e1 = testing::classical_binet_term(1, 256);
  EXPECT_NEAR(1.0 - e1.to_double(), 0.27639320225, 1e-10);
}

TEST(ErrorTableTest, RowPiecesAreConsistent) {
  for (const ErrorRow& row : error_table(4, -2, 40, 96)) {
    EXPECT_EQ(row.exact, kbonacci(4, row.n));
    const RealEnclosure diff = RealEnclosure::of(row.exact, 96) - row.approx;
    EXPECT_TRUE(diff.intersect(row.error).has_value()) << "n=" << row.n;
  }
}

TEST(ErrorTableTest, ErrorAtFirstIndexIsTheDominantTerm) {
  for (long k = 2; k <= 12; ++k) {
    const std::vector<ErrorRow> rows = error_table(k, 2 - k, 2 - k, 96);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].exact, 0);
    EXPECT_TRUE((rows[0].error + rows[0].approx).contains_zero()) << "k=" << k;
  }
}

TEST(ErrorTableTest, CertifiedBelowOneHalf) {
  for (long k = 2; k <= 10; ++k) {
    for (const ErrorRow& row : error_table(k, 2 - k, 300, 64)) {
      EXPECT_TRUE(row.error.strictly_inside(mpq_class(-1, 2), mpq_class(1, 2))) << "k=" << k << " n=" << row.n;
    }
  }
}

TEST(ErrorTableTest, ErrorAtZeroBelowOneHalf) {
  for (long k = 2; k <= 64; ++k) {
    EXPECT_TRUE(dominant_term(k, 0, 64).strictly_below(mpq_class(1, 2))) << "k=" << k;
  }
}

TEST(ErrorTableTest, NotMonotoneForOrderSix) {
  const std::vector<ErrorRow> rows = error_table(6, 0, 7, 64);
  const auto gt = [&](std::size_t a, std::size_t b) {
    return compare(rows[a].error.abs().lo(), rows[b].error.abs().hi()) > 0;
  };
  EXPECT_TRUE(gt(1, 2));
  EXPECT_TRUE(gt(7, 6));
}

TEST(ErrorTableTest, ErrorsDecay) {
  for (long k = 2; k <= 10; ++k) {
    const std::vector<ErrorRow> early = error_table(k, 2, 2 + k, 64);
    const std::vector<ErrorRow> late = error_table(k, 100, 100 + k, 64);
    BigFloat early_max(64), late_max(64);
    for (const auto& r : early)
      if (compare(r.error.abs().lo(), early_max) > 0) early_max = r.error.abs().lo();
    for (const auto& r : late)
      if (compare(r.error.abs().hi(), late_max) > 0) late_max = r.error.abs().hi();
    EXPECT_LT(compare(late_max, early_max), 0) << "k=" << k;
  }
}

TEST(ErrorTableTest, DomainErrors) {
  EXPECT_THROW(error_table(1, 0, 3, 64), OrderOutOfRangeError);
  EXPECT_THROW(error_table(4, -3, 3, 64), IndexOutOfRangeError);
}

TEST(ErrorRecurrenceTest, ResidualsContainZero) {
  for (long k : {2L, 3L, 6L, 9L}) {
    const long bits = 128;
    const std::vector<ErrorRow> rows = error_table(k, 2 - k, 120, bits);
    const std::vector<RecurrenceResidual> res = check_error_recurrence(rows, k);
    EXPECT_EQ(res.size(), 119u) << "k=" << k;
    for (const auto& r : res) {
      EXPECT_TRUE(r.residual.contains_zero()) << "k=" << k << " n=" << r.n;
      EXPECT_LT(compare(r.residual.width(), mpq_class(1, mpz_class(1) << (bits / 4))), 0);
    }
    for (const auto& r : check_two_step_identity(rows, k)) {
      EXPECT_TRUE(r.residual.contains_zero()) << "k=" << k << " n=" << r.n;
    }
  }
}

TEST(ErrorRecurrenceTest, ChartRangeForOrderSix) {
  const std::vector<ErrorRow> rows = error_table(6, -4, 7, 96);
  const std::vector<RecurrenceResidual> res = check_error_recurrence(rows, 6);
  ASSERT_EQ(res.size(), 6u);
  EXPECT_EQ(res.front().n, 2);
  EXPECT_EQ(res.back().n, 7);
}

TEST(ErrorRecurrenceTest, MalformedRows) {
  std::vector<ErrorRow> rows = error_table(3, -1, 10, 64);
  std::vector<ErrorRow> gap = rows;
  gap.erase(gap.begin() + 5);
  EXPECT_THROW(check_error_recurrence(gap, 3), MalformedRangeError);
  EXPECT_THROW(check_two_step_identity(gap, 3), MalformedRangeError);
  const std::vector<ErrorRow> short_run(rows.begin(), rows.begin() + 3);
  EXPECT_THROW(check_error_recurrence(short_run, 3), MalformedRangeError);
}

TEST(MPropertiesTest, AllPassForSmallAndLargeOrders) {
  for (long k : {2L, 3L, 7L, 16L, 32L}) {
    const MPropertyReport r = check_m_properties(k, 1024);
    EXPECT_TRUE(r.all_passed()) << "k=" << k;
    EXPECT_EQ(r.decrease_violations, 0);
    EXPECT_EQ(r.reciprocal_violations, 0);
  }
}

// 1/x = (x - 1) / (2 + (k + 1)(x - 2)) clears to x^2 - (k + 2) x + 2k = 0.
TEST(MPropertiesTest, IntersectionsAreTwoAndK) {
  for (long k = 2; k <= 32; ++k) {
    const MPropertyReport r = check_m_properties(k, 16);
    std::vector<mpq_class> expected{2};
    if (k != 2) expected.push_back(k);
    std::vector<mpq_class> got = r.intersections;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << "k=" << k;
    for (const auto& x : got) EXPECT_EQ(x * x - (k + 2) * x + 2 * k, 0);
    EXPECT_TRUE(r.one_at_left_end);
    EXPECT_TRUE(r.half_at_two);
  }
}

BigFloat sqrt5_over(long numerator, long bits) {
  BigFloat s(bits);
  mpfr_sqrt_ui(s.get(), 5, MPFR_RNDN);
  mpfr_si_div(s.get(), numerator, s.get(), MPFR_RNDN);
  return s;
}

TEST(ThresholdTest, ScaledFibonacciFromFive) {
  const ThresholdReport r = rounding_threshold(scaled_fibonacci_problem(40));
  ASSERT_TRUE(r.threshold.has_value());
  EXPECT_EQ(*r.threshold, 5);
  EXPECT_EQ(r.verified_up_to, 40);
  EXPECT_FALSE(r.matches(4));
  EXPECT_EQ(r.target.front(), 10);
  EXPECT_EQ(r.target[5], 80);
}

TEST(ThresholdTest, GnHasNoThreshold) {
  const ThresholdReport r = rounding_threshold(gn_problem(40));
  EXPECT_FALSE(r.threshold.has_value());
  EXPECT_EQ(r.target[4], 80);
}

TEST(ThresholdTest, FibonacciFromZero) {
  const ThresholdReport r = rounding_threshold(fibonacci_problem(60));
  ASSERT_TRUE(r.threshold.has_value());
  EXPECT_EQ(*r.threshold, 0);
}

TEST(ThresholdTest, HandBuiltScaledFibonacci) {
  std::vector<mpz_class> target{10, 10};
  while (target.size() < 30) target.push_back(target[target.size() - 1] + target[target.size() - 2]);
  const ThresholdReport r = rounding_threshold(sqrt5_over(10, 256), testing::golden_ratio(256), target, 1, 0);
  ASSERT_TRUE(r.threshold.has_value());
  EXPECT_EQ(*r.threshold, 5);
}

// For random targets built from rounding a known sequence and then
// corrupting one index, the reported threshold sits just past the last
// mismatch and every index from it on matches.
TEST(ThresholdTest, SemanticsOnRandomCorruptions) {
  std::mt19937_64 rng(5);
  const BigFloat c = sqrt5_over(1, 256);
  const BigFloat phi = testing::golden_ratio(256);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> len(5, 40);
    const long count = len(rng);
    const long n_start = std::uniform_int_distribution<long>(-3, 3)(rng);
    std::vector<mpz_class> target;
    for (long n = n_start; n < n_start + count; ++n) {
      BigFloat v(256);
      mpfr_pow_si(v.get(), phi.get(), n, MPFR_RNDN);
      mpfr_mul(v.get(), v.get(), c.get(), MPFR_RNDN);
      target.push_back(v.round_half_up());
    }
    const long bad = std::uniform_int_distribution<long>(0, count - 1)(rng);
    target[static_cast<std::size_t>(bad)] += 1;
    const ThresholdReport r = rounding_threshold(c, phi, target, n_start, 0);
    EXPECT_EQ(r.verified_up_to, n_start + count - 1);
    if (bad == count - 1) {
      EXPECT_FALSE(r.threshold.has_value());
    } else {
      ASSERT_TRUE(r.threshold.has_value());
      EXPECT_EQ(*r.threshold, n_start + bad + 1);
      for (long n = *r.threshold; n <= r.verified_up_to; ++n) EXPECT_TRUE(r.matches(n));
      EXPECT_FALSE(r.matches(*r.threshold - 1));
    }
  }
}

}  // namespace
}  // namespace kstep
