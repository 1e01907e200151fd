#include <gtest/gtest.h>

#include <random>

#include "invlim/shift.hpp"
#include "invlim/words.hpp"
#include "test_support.hpp"

using namespace invlim;

namespace {

const Alphabet kBin = Alphabet::digits(2);
const Alphabet kTri = Alphabet::digits(3);

OneSidedWord w1(const char* s, const Alphabet& a = kBin) { return OneSidedWord::parse(s, a); }
TwoSidedWord w2(const char* s, const Alphabet& a = kBin) { return TwoSidedWord::parse(s, a); }

// Independent oracle: expand both words and scan.
Rational naive_one_sided(const OneSidedWord& x, const OneSidedWord& y) {
  for (std::size_t n = 0; n < 200; ++n)
    if (x.at(n) != y.at(n)) return Rational::pow2_neg(static_cast<int>(n));
  return Rational(0);
}

// Truncated sum over |n| <= R, plus the bound on what was left out.
Rational truncated_two_sided(const TwoSidedWord& s, const TwoSidedWord& t, int R) {
  Rational sum(0);
  for (int n = -R; n <= R; ++n)
    if (s.at(n) != t.at(n)) sum += Rational::pow2_neg(n < 0 ? -n : n);
  return sum;
}

}  // namespace

TEST(OneSidedWord, ParseAndCanonicalForm) {
  EXPECT_EQ(w1("0(11)").str(kBin), "0(1)");
  EXPECT_EQ(w1("01(01)").str(kBin), "(01)");
  EXPECT_EQ(w1("0101"), w1("(01)"));
  EXPECT_EQ(w1("1(0)").preperiod(), Word{1});
  EXPECT_THROW(w1("0()"), std::invalid_argument);
  EXPECT_THROW(w1("2"), std::invalid_argument);
  EXPECT_THROW(w1("0(1"), std::invalid_argument);
}

TEST(OneSidedWord, CanonicalFormIsIdempotent) {
  for (const auto& x : eventually_periodic_words(EdgeShiftSpec::full_shift(2), 7)) {
    OneSidedWord again(x.preperiod(), x.period());
    EXPECT_EQ(again, x);
    EXPECT_EQ(w1(x.str(kBin).c_str()), x);
  }
}

TEST(OneSidedWord, ShiftExamples) {
  EXPECT_EQ(shift_map(w1("01(1)")), w1("(1)"));
  EXPECT_EQ(shift_map(w1("(01)")), w1("(10)"));
  EXPECT_EQ(w1("(0)").prepended(Symbol{1}), w1("1(0)"));
}

TEST(OneSidedWord, MetricExamples) {
  EXPECT_EQ(metric_one_sided(w1("(01)"), w1("(01)")), Rational(0));
  EXPECT_EQ(metric_one_sided(w1("(0)"), w1("00(1)")), Rational(1, 4));
  EXPECT_EQ(metric_one_sided(w1("1(0)"), w1("(1)")), Rational(1, 2));
  EXPECT_EQ(metric_one_sided(w1("(0)"), w1("001(0)")), Rational(1, 4));
}

TEST(OneSidedWord, OrderIsLexicographic) {
  EXPECT_LT(w1("(0)"), w1("0(1)"));
  EXPECT_LT(w1("0(1)"), w1("(1)"));
  EXPECT_LT(w1("(01)"), w1("(011)"));
}

// Exhaustive over all binary words with |pre| + |per| <= 8.
TEST(OneSidedWordProperty, MetricMatchesScanAndShiftDoublesAtMost) {
  auto words = eventually_periodic_words(EdgeShiftSpec::full_shift(2), 8);
  ASSERT_GT(words.size(), 500u);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i; j < words.size(); ++j) {
      const auto& x = words[i];
      const auto& y = words[j];
      Rational d = metric_one_sided(x, y);
      ASSERT_EQ(d, naive_one_sided(x, y)) << x.str(kBin) << " " << y.str(kBin);
      ASSERT_EQ(d.is_zero(), i == j);
      ASSERT_LE(metric_one_sided(x.shifted(), y.shifted()), Rational(2) * d);
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 100000u);
}

TEST(OneSidedWordProperty, UltrametricTriangle) {
  auto words = eventually_periodic_words(EdgeShiftSpec::full_shift(2), 5);
  for (const auto& x : words)
    for (const auto& y : words)
      for (const auto& z : words)
        ASSERT_LE(metric_one_sided(x, z), max(metric_one_sided(x, y), metric_one_sided(y, z)));
}

TEST(TwoSidedWord, ParseAndPrint) {
  auto s = w2("(0).(1)");
  EXPECT_EQ(s.at(-1), 0);
  EXPECT_EQ(s.at(0), 1);
  EXPECT_EQ(s.str(kBin), "(0).(1)");
  EXPECT_EQ(w2("(01).(01)"), w2("(10)1.0(10)"));
  EXPECT_EQ(w2("(0)1.(0)").at(-1), 1);
  EXPECT_EQ(w2("(0).01(0)"), w2("(00)00.01(00)"));
  EXPECT_NE(w2("(0).01(0)"), w2("(0).0(10)"));
  EXPECT_THROW(w2("(0)1(0)"), std::invalid_argument);
  EXPECT_THROW(w2("0.(1)"), std::invalid_argument);
}

TEST(TwoSidedWord, PrintRoundTrip) {
  for (const auto& s : eventually_periodic_two_sided(EdgeShiftSpec::full_shift(2), 5, -3, 3)) {
    EXPECT_EQ(TwoSidedWord::parse(s.str(kBin), kBin), s) << s.str(kBin);
  }
}

TEST(TwoSidedWord, CanonicalFormAgreesWithSymbols) {
  // Different spellings of the same bi-infinite word are equal, and equal
  // spellings agree at every index.
  auto all = eventually_periodic_two_sided(EdgeShiftSpec::full_shift(2), 5, -3, 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      bool same = true;
      for (int n = -40; n <= 40 && same; ++n) same = all[i].at(n) == all[j].at(n);
      ASSERT_FALSE(same) << all[i].str(kBin) << " vs " << all[j].str(kBin);
    }
  }
}

TEST(TwoSidedWord, ShiftIsIndexTranslation) {
  auto s = w2("(01)10.011(0)");
  auto t = shift_two_sided(s, 3);
  for (int n = -20; n <= 20; ++n) EXPECT_EQ(t.at(n), s.at(n + 3));
  EXPECT_EQ(shift_two_sided(t, -3), s);
  EXPECT_EQ(shift_two_sided(s, 0), s);
}

TEST(TwoSidedWord, RayReadsForward) {
  auto s = w2("(0)1.01(10)");
  EXPECT_EQ(s.ray(0), w1("01(10)"));
  EXPECT_EQ(s.ray(-1), w1("101(10)"));
  EXPECT_EQ(s.ray(-3), w1("00101(10)"));
  EXPECT_EQ(w2("(01).(01)").ray(0), w1("(01)"));
}

TEST(TwoSidedWord, MetricExamples) {
  EXPECT_EQ(metric_two_sided(w2("(0).(1)"), w2("(0).(1)")), Rational(0));
  EXPECT_EQ(metric_two_sided(w2("(0).(0)"), w2("(1).(1)")), Rational(3));
  EXPECT_EQ(metric_two_sided(w2("(0).(0)"), w2("(0).1(0)")), Rational(1));
  EXPECT_EQ(metric_two_sided(w2("(0).(0)"), w2("(0)1.(0)")), Rational(1, 2));
  EXPECT_EQ(metric_two_sided(w2("(01).(01)"), w2("(10).(10)")), Rational(3));
}

TEST(TwoSidedWordProperty, ClosedFormMatchesTruncation) {
  auto all = eventually_periodic_two_sided(EdgeShiftSpec::full_shift(2), 5, -2, 2);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  const int R = 50;
  const Rational tail = Rational(4) * Rational::pow2_neg(R);  // 2 * sum_{n>R} 2^-n
  for (int i = 0; i < 3000; ++i) {
    const auto& s = all[pick(rng)];
    const auto& t = all[pick(rng)];
    Rational exact = metric_two_sided(s, t);
    Rational trunc = truncated_two_sided(s, t, R);
    ASSERT_LE(trunc, exact);
    ASSERT_LE(exact, trunc + tail) << s.str(kBin) << " " << t.str(kBin);
    ASSERT_EQ(exact, metric_two_sided(t, s));
  }
}
