#include <gtest/gtest.h>

#include "oracles.hpp"
#include "perfnum/errors.hpp"
#include "perfnum/mersenne.hpp"

namespace perfnum {
namespace {

TEST(LucasLehmer, Examples) {
  EXPECT_TRUE(mersenne::lucas_lehmer(7));
  EXPECT_FALSE(mersenne::lucas_lehmer(11));
  EXPECT_TRUE(mersenne::lucas_lehmer(2));
  EXPECT_TRUE(mersenne::lucas_lehmer(127));
  EXPECT_FALSE(mersenne::lucas_lehmer(67));
  EXPECT_THROW(mersenne::lucas_lehmer(9), NonPrimeExponent);
  EXPECT_THROW(mersenne::lucas_lehmer(1), NonPrimeExponent);
}

TEST(LucasLehmer, MatchesTrialDivisionUpTo31) {
  for (unsigned long p = 2; p <= 31; ++p) {
    if (!testing::trial_division_prime(p)) continue;
    EXPECT_EQ(mersenne::lucas_lehmer(p), testing::trial_division_prime((1ULL << p) - 1)) << p;
  }
}

TEST(ListExponents, Examples) {
  using V = std::vector<unsigned long>;
  EXPECT_EQ(mersenne::list_exponents(31), (V{2, 3, 5, 7, 13, 17, 19, 31}));
  EXPECT_EQ(mersenne::list_exponents(2), (V{2}));
  EXPECT_EQ(mersenne::list_exponents(12), (V{2, 3, 5, 7}));
  EXPECT_EQ(mersenne::list_exponents(127), (V{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127}));
}

TEST(ListExponents, IndependentOfWorkerCount) {
  EXPECT_EQ(mersenne::list_exponents(607, 1), mersenne::list_exponents(607, 4));
}

TEST(EvenPerfect, Examples) {
  EXPECT_EQ(mersenne::even_perfect(2).n, 6);
  EXPECT_EQ(mersenne::even_perfect(3).n, 28);
  EXPECT_EQ(mersenne::even_perfect(7).n, 8128);
  EXPECT_EQ(mersenne::even_perfect(7).mersenne, 127);
  EXPECT_THROW(mersenne::even_perfect(11), NotMersennePrime);
  EXPECT_THROW(mersenne::even_perfect(4), NonPrimeExponent);
}

TEST(EvenPerfect, DivisorSumIsTwiceN) {
  for (unsigned long p : mersenne::list_exponents(13)) {
    const PerfectNumber pn = mersenne::even_perfect(p);
    const std::uint64_t n = pn.n.get_ui();
    EXPECT_EQ(testing::divisor_sum(n), 2 * n) << p;
    EXPECT_EQ(mersenne::divisor_sum(pn.n), 2 * pn.n) << p;
  }
}

TEST(EvenPerfect, MersenneIsThreeModFour) {
  for (unsigned long p : mersenne::list_exponents(127)) {
    EXPECT_EQ(mersenne::even_perfect(p).mersenne % 4, 3) << p;
  }
}

TEST(Recognize, Examples) {
  EXPECT_EQ(mersenne::recognize_even_perfect(28)->p, 3u);
  EXPECT_EQ(mersenne::recognize_even_perfect(496)->p, 5u);
  EXPECT_FALSE(mersenne::recognize_even_perfect(24));
  EXPECT_FALSE(mersenne::recognize_even_perfect(1));
  EXPECT_FALSE(mersenne::recognize_even_perfect(27));
  // 2^10 (2^11 - 1): right shape, composite Mersenne factor.
  EXPECT_FALSE(mersenne::recognize_even_perfect(Natural(2047) << 10));
  // 2^3 (2^4 - 1): shape with composite exponent.
  EXPECT_FALSE(mersenne::recognize_even_perfect(120));
}

TEST(Recognize, RoundTripsGeneratedNumbers) {
  for (unsigned long p : mersenne::list_exponents(127)) {
    const auto found = mersenne::recognize_even_perfect(mersenne::even_perfect(p).n);
    ASSERT_TRUE(found.has_value()) << p;
    EXPECT_EQ(found->p, p);
  }
}

TEST(Recognize, MatchesDivisorSumBelow10000) {
  for (std::uint64_t n = 2; n < 10000; n += 2) {
    const bool perfect = testing::divisor_sum(n) == 2 * n;
    EXPECT_EQ(mersenne::recognize_even_perfect(Natural(static_cast<unsigned long>(n))).has_value(), perfect) << n;
  }
}

}  // namespace
}  // namespace perfnum
