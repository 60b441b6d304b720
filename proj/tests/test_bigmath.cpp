#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "perfnum/bigmath.hpp"
#include "perfnum/errors.hpp"

namespace perfnum {
namespace {

using bigmath::pow;
using bigmath::pow2;

TEST(Iroot, Examples) {
  EXPECT_EQ(bigmath::iroot(28, 3), 3);
  EXPECT_EQ(bigmath::iroot(0, 5), 0);
  EXPECT_EQ(bigmath::iroot(pow2(90), 3), pow2(30));
  EXPECT_EQ(bigmath::iroot(pow2(90) - 1, 3), pow2(30) - 1);
  EXPECT_EQ(bigmath::iroot(1, 7), 1);
  EXPECT_EQ(bigmath::iroot(12345, 1), 12345);
  EXPECT_THROW(bigmath::iroot(5, 0), PreconditionError);
}

TEST(Iroot, BracketsPropertyOnRandomInputs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const unsigned bits = 1 + rng() % 300;
    Natural n = 0;
    for (unsigned b = 0; b < bits; b += 64) n = (n << 64) + bigmath::from_u64(rng());
    n %= pow2(bits);
    const unsigned long m = 1 + rng() % 12;
    const Natural r = bigmath::iroot(n, m);
    ASSERT_LE(pow(r, m), n);
    ASSERT_GT(pow(r + 1, m), n);
    if (bigmath::fits_u64(n)) {
      ASSERT_EQ(bigmath::from_u64(bigmath::iroot_u64(bigmath::to_u64(n), m)), r);
    }
  }
}

TEST(Iroot, U64Extremes) {
  const std::uint64_t max = ~std::uint64_t{0};
  EXPECT_EQ(bigmath::iroot_u64(max, 2), 4294967295ULL);
  EXPECT_EQ(bigmath::iroot_u64(max, 64), 1ULL);
  EXPECT_EQ(bigmath::iroot_u64(max, 63), 2ULL);
  EXPECT_EQ(bigmath::iroot_u64(max, 1), max);
}

TEST(PerfectPower, Examples) {
  EXPECT_EQ(bigmath::as_perfect_power(27, 3), Natural(3));
  EXPECT_FALSE(bigmath::as_perfect_power(28, 3).has_value());
  const Natural n_val = pow2(7);
  EXPECT_EQ(bigmath::as_perfect_power(4 * pow(n_val, 4), 2), Natural(2 * n_val * n_val));
}

TEST(PerfectPower, RecoversEveryRootUpTo1000) {
  for (unsigned long m = 1; m <= 9; ++m) {
    for (unsigned long r = 1; r <= 1000; ++r) {
      const auto root = bigmath::as_perfect_power(pow(Natural(r), m), m);
      ASSERT_TRUE(root.has_value()) << r << "^" << m;
      ASSERT_EQ(*root, r);
      if (m >= 2 && r >= 2) ASSERT_FALSE(bigmath::as_perfect_power(pow(Natural(r), m) + 1, m));
    }
  }
}

TEST(V2, Examples) {
  EXPECT_EQ(bigmath::v2(48), 4u);
  EXPECT_EQ(bigmath::v2(7), 0u);
  EXPECT_EQ(bigmath::v2((pow2(7) - 1) << 6), 6u);  // 8128
  EXPECT_EQ(bigmath::v2(pow2(200)), 200u);
  EXPECT_THROW(bigmath::v2(0), PreconditionError);
}

TEST(Decimal, ParsesOnlyPlainDigits) {
  EXPECT_EQ(bigmath::from_decimal("2305843008139952128"), Natural("2305843008139952128"));
  EXPECT_THROW(bigmath::from_decimal("-1"), std::invalid_argument);
  EXPECT_THROW(bigmath::from_decimal("1e5"), std::invalid_argument);
  EXPECT_THROW(bigmath::from_decimal(""), std::invalid_argument);
  EXPECT_EQ(bigmath::to_decimal(pow2(64)), "18446744073709551616");
}

TEST(Primality, AgreesWithTrialDivisionBelow200000) {
  for (std::uint64_t n = 0; n < 200000; ++n) {
    ASSERT_EQ(bigmath::is_prime(bigmath::from_u64(n)), testing::trial_division_prime(n)) << n;
  }
}

TEST(Primality, StrongPseudoprimesAndLargeValues) {
  // Carmichael numbers and strong pseudoprimes to small bases.
  for (std::uint64_t n : {561ULL, 1105ULL, 2047ULL, 3215031751ULL, 3825123056546413051ULL}) {
    EXPECT_FALSE(bigmath::is_prime_u64(n)) << n;
  }
  EXPECT_TRUE(bigmath::is_prime(pow2(61) - 1));
  EXPECT_TRUE(bigmath::is_prime(pow2(89) - 1));
  EXPECT_TRUE(bigmath::is_prime(pow2(127) - 1));  // past the fixed-base range
  EXPECT_FALSE(bigmath::is_prime(pow2(67) - 1));  // 193707721 * 761838257287
  EXPECT_FALSE(bigmath::is_prime(pow2(128) + 1));
}

TEST(Factor, Examples) {
  using PP = bigmath::PrimePower;
  auto f72 = bigmath::factor(72);
  EXPECT_TRUE(f72.complete);
  EXPECT_EQ(f72.factors, (std::vector<PP>{{2, 3}, {3, 2}}));
  auto f1 = bigmath::factor(1);
  EXPECT_TRUE(f1.complete);
  EXPECT_TRUE(f1.factors.empty());
  auto f2047 = bigmath::factor(2047);
  EXPECT_EQ(f2047.factors, (std::vector<PP>{{23, 1}, {89, 1}}));
}

TEST(Factor, RhoSplitsSemiprimesBeyondTrialBound) {
  const Natural a("1000003"), b("1000033"), c("193707721"), d("761838257287");
  auto f = bigmath::factor(a * b * b);
  ASSERT_TRUE(f.complete);
  EXPECT_EQ(f.factors, (std::vector<bigmath::PrimePower>{{a, 1}, {b, 2}}));
  auto g = bigmath::factor(pow2(67) - 1);
  ASSERT_TRUE(g.complete);
  EXPECT_EQ(g.factors, (std::vector<bigmath::PrimePower>{{c, 1}, {d, 1}}));
}

TEST(Factor, ProductInvariantAndDeterminism) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Natural n = bigmath::from_u64(1 + rng() % 1'000'000'000'000ULL);
    const auto f = bigmath::factor(n);
    ASSERT_TRUE(f.complete);
    ASSERT_EQ(f.product(), n);
    for (const auto& pp : f.factors) ASSERT_TRUE(bigmath::is_prime(pp.prime));
    ASSERT_EQ(f, bigmath::factor(n));
  }
}

TEST(Factor, ExhaustedBudgetIsFlagged) {
  bigmath::FactorBudget tiny;
  tiny.trial_bound = 10;
  tiny.rho_iterations = 1;
  tiny.rho_attempts = 1;
  const Natural n = Natural("1000003") * Natural("1000033");
  const auto f = bigmath::factor(n, tiny);
  EXPECT_FALSE(f.complete);
  EXPECT_EQ(f.unfactored, n);
  EXPECT_EQ(f.product(), n);
  EXPECT_THROW(bigmath::radical(n, tiny), IncompleteFactorization);
}

TEST(Radical, Examples) {
  EXPECT_EQ(bigmath::radical(72), 6);
  EXPECT_EQ(bigmath::radical(1), 1);
  EXPECT_EQ(bigmath::radical(pow2(61) - 1), pow2(61) - 1);
}

TEST(Radical, DividesIsSquarefreeAndIgnoresSquaring) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Natural n = bigmath::from_u64(1 + rng() % 10'000'000);
    const Natural r = bigmath::radical(n);
    ASSERT_EQ(n % r, 0);
    for (const auto& pp : bigmath::factor(r).factors) ASSERT_EQ(pp.exponent, 1u);
    ASSERT_EQ(bigmath::radical(n * n), r);
  }
}

TEST(DivisionHelpers, CeilAndFloorWithNegativeNumerators) {
  EXPECT_EQ(bigmath::ceil_div(72, 28), 3);
  EXPECT_EQ(bigmath::floor_div(60, 29), 2);
  EXPECT_EQ(bigmath::floor_div(-1, 4), -1);
  EXPECT_EQ(bigmath::ceil_div(-1, 4), 0);
}

}  // namespace
}  // namespace perfnum
