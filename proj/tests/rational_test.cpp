#include <gtest/gtest.h>
#include <gmpxx.h>

#include <random>

#include "invlim/rational.hpp"

using invlim::Rational;
using invlim::RationalInterval;
using invlim::Tri;

namespace {

mpq_class oracle(const Rational& r) { return r.to_mpq(); }

Rational random_rational(std::mt19937_64& rng, bool huge) {
  std::uniform_int_distribution<std::int64_t> small(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t{1} << 62), std::int64_t{1} << 62);
  std::int64_t n = huge ? big(rng) : small(rng);
  std::int64_t d = huge ? big(rng) : small(rng);
  if (d == 0) d = 1;
  return Rational(n, d);
}

}  // namespace

TEST(Rational, LowestTermsAndSign) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(0, -7).str(), "0/1");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0/1", "1/2", "-7/3", "5/1"}) EXPECT_EQ(Rational::parse(s).str(), s);
  EXPECT_EQ(Rational::parse("4"), Rational(4));
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, PowersOfTwo) {
  EXPECT_EQ(Rational::pow2_neg(3), Rational(1, 8));
  EXPECT_EQ(pow(Rational(1, 2), -3), Rational(8));
  EXPECT_EQ(pow(Rational(2, 3), 0), Rational(1));
  Rational tiny = Rational::pow2_neg(200);
  EXPECT_EQ(oracle(tiny), mpq_class(1) / (mpz_class(1) << 200));
}

// Random arithmetic against GMP directly, across the int64 boundary.
TEST(RationalProperty, MatchesGmpOracle) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4000; ++i) {
    bool huge = i % 2 == 1;
    Rational a = random_rational(rng, huge), b = random_rational(rng, huge);
    mpq_class qa = oracle(a), qb = oracle(b);
    EXPECT_EQ(oracle(a + b), mpq_class(qa + qb));
    EXPECT_EQ(oracle(a - b), mpq_class(qa - qb));
    EXPECT_EQ(oracle(a * b), mpq_class(qa * qb));
    if (!b.is_zero()) EXPECT_EQ(oracle(a / b), mpq_class(qa / qb));
    EXPECT_EQ(a < b, qa < qb);
    EXPECT_EQ(a == b, qa == qb);
  }
}

TEST(RationalProperty, DemotesBackToSmall) {
  Rational big = Rational(std::int64_t{1} << 62) * Rational(8);
  EXPECT_FALSE(big.is_small());
  Rational back = big / Rational(16);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Rational(std::int64_t{1} << 61));
  EXPECT_EQ(std::hash<Rational>{}(back), std::hash<Rational>{}(Rational(std::int64_t{1} << 61)));
}

TEST(RationalInterval, ThreeValuedComparison) {
  RationalInterval iv(Rational(1, 4), Rational(1, 2));
  EXPECT_EQ(leq(iv, Rational(1, 2)), Tri::kTrue);
  EXPECT_EQ(leq(iv, Rational(1, 8)), Tri::kFalse);
  EXPECT_EQ(leq(iv, Rational(1, 3)), Tri::kIndeterminate);
  EXPECT_THROW(RationalInterval(Rational(1), Rational(0)), std::invalid_argument);
  EXPECT_EQ(Rational(2) * iv, RationalInterval(Rational(1, 2), Rational(1)));
}
