#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "kbonacci/errors.hpp"
#include "kbonacci/exact.hpp"
#include "support/oracles.hpp"

namespace kstep {
namespace {

TEST(KbonacciTest, KnownValues) {
  EXPECT_EQ(kbonacci(3, 8), 44);
  EXPECT_EQ(kbonacci(4, 9), 108);
  EXPECT_EQ(kbonacci(5, -3), 0);
  EXPECT_EQ(kbonacci(2, 1), 1);
  EXPECT_EQ(kbonacci(2, 0), 0);
}

TEST(KbonacciTest, RangeValues) {
  const std::vector<mpz_class> trib = kbonacci_range(3, 1, 9);
  const std::vector<long> expected{1, 1, 2, 4, 7, 13, 24, 44, 81};
  ASSERT_EQ(trib.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(trib[i], expected[i]);

  const std::vector<mpz_class> quad = kbonacci_range(4, -2, 2);
  const std::vector<long> q{0, 0, 0, 1, 1};
  ASSERT_EQ(quad.size(), q.size());
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_EQ(quad[i], q[i]);
}

TEST(KbonacciTest, FibonacciFortyFromMachineIntegers) {
  std::uint64_t a = 0, b = 1;
  for (int i = 1; i < 40; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  EXPECT_EQ(b, 102334155u);
  EXPECT_EQ(kbonacci_matrix(2, 40), 102334155);
  EXPECT_EQ(kbonacci(2, 40), 102334155);
}

TEST(KbonacciTest, AgreesWithBruteForce) {
  for (long k = 2; k <= 12; ++k) {
    const auto ref = testing::brute_force_sequence(k, 60);
    const std::vector<mpz_class> range = kbonacci_range(k, 2 - k, 60);
    ASSERT_EQ(range.size(), ref.size());
    std::size_t i = 0;
    for (const auto& [n, value] : ref) {
      EXPECT_EQ(range[i++], mpz_class(std::to_string(value))) << "k=" << k << " n=" << n;
      EXPECT_EQ(kbonacci(k, n), mpz_class(std::to_string(value))) << "k=" << k << " n=" << n;
    }
  }
}

TEST(KbonacciTest, MatrixAgreesWithRecurrence) {
  for (long k = 2; k <= 10; ++k) {
    const std::vector<mpz_class> range = kbonacci_range(k, 2 - k, 300);
    for (long n = 2 - k; n <= 300; ++n) {
      ASSERT_EQ(kbonacci_matrix(k, n), range[static_cast<std::size_t>(n - (2 - k))]) << "k=" << k << " n=" << n;
    }
  }
}

TEST(KbonacciTest, PowersOfTwoAtTheStart) {
  for (long k = 2; k <= 20; ++k) {
    for (long n = 2; n <= k + 1; ++n) {
      EXPECT_EQ(kbonacci(k, n), mpz_class(1) << static_cast<mp_bitcnt_t>(n - 2)) << "k=" << k << " n=" << n;
    }
    EXPECT_LT(kbonacci(k, k + 2), mpz_class(1) << static_cast<mp_bitcnt_t>(k));
  }
}

TEST(KbonacciTest, RandomIndicesSatisfyRecurrence) {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<long> order(2, 16);
  for (int trial = 0; trial < 200; ++trial) {
    const long k = order(rng);
    std::uniform_int_distribution<long> index(2, 400);
    const long n = index(rng);
    mpz_class sum = 0;
    for (long j = 1; j <= k; ++j) sum += kbonacci(k, n - j);
    EXPECT_EQ(kbonacci(k, n), sum) << "k=" << k << " n=" << n;
  }
}

TEST(SequenceWindowTest, DoublingIdentityCrossCheck) {
  for (long k = 2; k <= 8; ++k) {
    SequenceWindow w(k);
    EXPECT_EQ(w.newest_index(), 1);
    EXPECT_EQ(w.newest(), 1);
    EXPECT_EQ(static_cast<long>(w.terms().size()), k);
    for (int step = 0; step < 80; ++step) {
      const long n = w.newest_index();
      SequenceWindow next = w;
      next.advance();
      if (n >= 2) {
        EXPECT_TRUE(doubling_identity_holds(w, next.newest())) << "k=" << k << " n=" << n;
        EXPECT_FALSE(doubling_identity_holds(w, next.newest() + 1));
      }
      EXPECT_EQ(next.at(n), w.newest());
      w = next;
    }
    EXPECT_EQ(w.newest(), kbonacci(k, w.newest_index()));
  }
}

TEST(SequenceWindowTest, AtOutsideWindowThrows) {
  SequenceWindow w(3);
  EXPECT_EQ(w.at(-1), 0);
  EXPECT_THROW(w.at(2), PreconditionError);
  EXPECT_THROW(w.at(-2), PreconditionError);
}

TEST(CompanionMatrixTest, ApplyAdvancesState) {
  const CompanionMatrix c(3);
  EXPECT_EQ(c(0, 0), 1);
  EXPECT_EQ(c(0, 2), 1);
  EXPECT_EQ(c(1, 0), 1);
  EXPECT_EQ(c(2, 1), 1);
  EXPECT_EQ(c(1, 1), 0);
  // (F_7, F_6, F_5) -> (F_8, F_7, F_6)
  const std::vector<mpz_class> next = c.apply({24, 13, 7});
  EXPECT_EQ(next, (std::vector<mpz_class>{44, 24, 13}));
}

TEST(CompanionMatrixTest, PowerMatchesRepeatedProduct) {
  const CompanionMatrix c(4);
  CompanionMatrix acc = CompanionMatrix::identity(4);
  for (unsigned long e = 0; e <= 20; ++e) {
    const CompanionMatrix p = c.pow(e);
    for (long r = 0; r < 4; ++r)
      for (long col = 0; col < 4; ++col) EXPECT_EQ(p(r, col), acc(r, col)) << "e=" << e;
    acc = acc * c;
  }
}

TEST(KbonacciTest, DomainErrors) {
  EXPECT_THROW(kbonacci(1, 5), OrderOutOfRangeError);
  EXPECT_THROW(kbonacci(3, -2), IndexOutOfRangeError);
  EXPECT_THROW(kbonacci_matrix(3, -2), IndexOutOfRangeError);
  EXPECT_THROW(kbonacci_range(3, 5, 4), MalformedRangeError);
  EXPECT_THROW(kbonacci_range(3, -5, 4), IndexOutOfRangeError);
}

}  // namespace
}  // namespace kstep
