#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "kempner/qw.hpp"

using namespace kempner;
using namespace kempner::qw;

namespace {

std::vector<LogAffineTerm> sorted(std::vector<LogAffineTerm> t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<LogAffineTerm> terms_of(const char* w) {
  return sorted(build(Word::parse(w)).terms());
}

Enclosure log_ratio(long num, long den, mpfr_prec_t p) {
  return Enclosure::log_of(Integer(num), p) - Enclosure::log_of(Integer(den), p);
}

}  // namespace

TEST(Build, KnownWords) {
  EXPECT_EQ(terms_of("1"), sorted({{1, 1, 1}, {-1, 1, 2}}));
  EXPECT_EQ(terms_of("10"), sorted({{1, 2, 2}, {-1, 2, 3}}));
  EXPECT_EQ(terms_of("11"), sorted({{1, 1, 1}, {-1, 1, 2}, {-1, 2, 1}, {1, 2, 2}}));
  EXPECT_EQ(terms_of("010"), sorted({{1, 2, 2}, {-1, 2, 3}, {-1, 3, 6}, {1, 3, 7}}));
}

TEST(Build, Rendering) {
  const auto e = build(Word::parse("1"));
  EXPECT_EQ(e.to_string(), "+log(2n+1) -log(2n+2)");
  EXPECT_EQ(e.rational_function(), "((2n+1))/((2n+2))");
}

TEST(Build, RejectsNonBinary) {
  EXPECT_THROW(build(Word::parse("12", 3)), std::invalid_argument);
}

TEST(Coefficients, Examples) {
  const auto one = asymptotic_coefficients(build(Word::parse("1")));
  EXPECT_EQ(one.sign_sum, 0);
  EXPECT_EQ(one.scale_sum, 0);
  EXPECT_EQ(one.offset_sum, Rational(-1, 2));
  EXPECT_EQ(asymptotic_coefficients(build(Word::parse("11"))).offset_sum, Rational(-1, 4));
  EXPECT_EQ(asymptotic_coefficients(build(Word::parse("010"))).offset_sum, Rational(-1, 8));
}

// Every word up to length 8 satisfies the three exact identities, and the
// term multiset is balanced with offsets in [0, 2^l].
TEST(CoefficientsProperty, AllWordsUpToEight) {
  std::size_t words = 0;
  for (unsigned len = 1; len <= 8; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::vector<std::uint8_t> s(len);
      for (unsigned i = 0; i < len; ++i) s[i] = static_cast<std::uint8_t>((bits >> (len - 1 - i)) & 1);
      const auto e = build(Word(s));
      const auto c = asymptotic_coefficients(e);
      Rational expected(1);
      expected /= Rational(power(2, len));
      ASSERT_EQ(c.sign_sum, 0);
      ASSERT_EQ(c.scale_sum, 0);
      ASSERT_EQ(c.offset_sum, -expected) << Word(s).str();
      int plus = 0;
      for (const auto& t : e.terms()) {
        plus += t.sign > 0 ? 1 : 0;
        ASSERT_GE(t.scale_exponent, 1u);
        ASSERT_LE(t.offset, std::uint64_t{1} << t.scale_exponent);
      }
      ASSERT_EQ(2 * plus, static_cast<int>(e.terms().size()));
      ++words;
    }
  }
  EXPECT_EQ(words, 510u);
}

TEST(Evaluate, LogThreeQuarters) {
  const Enclosure v = evaluate(build(Word::parse("1")), 1, 128);
  EXPECT_TRUE(v.intersects(log_ratio(3, 4, 200)));
  EXPECT_LT(v.width().to_double(), 1e-36);
}

TEST(Evaluate, AsymptoticProxy) {
  const std::uint64_t n = std::uint64_t{1} << 20;
  const Enclosure v = evaluate(build(Word::parse("1")), n, 128);
  const Enclosure target = Enclosure::of(Rational(-1, 2 * n), 128);
  // within 2^-19 relative to 1/(2n)
  EXPECT_LT((v - target).magnitude().to_double(), 1.0 / (1 << 19) / (2.0 * n));
}

TEST(Evaluate, NegationCancels) {
  const auto e = build(Word::parse("0110"));
  for (std::uint64_t n : {1u, 7u, 1000u}) {
    EXPECT_TRUE((evaluate(e, n) + evaluate(e.negated(), n)).contains(Rational(0)));
  }
}

TEST(Evaluate, LogZeroThrows) {
  // build("0") contains log(2n).
  EXPECT_THROW(evaluate(build(Word::parse("0")), 0), std::domain_error);
  EXPECT_FALSE(log_at_zero(build(Word::parse("0"))).has_value());
  EXPECT_TRUE(log_at_zero(build(Word::parse("10"))).has_value());
  const auto at_zero = log_at_zero(build(Word::parse("1")));
  ASSERT_TRUE(at_zero.has_value());
  EXPECT_TRUE(at_zero->intersects(log_ratio(1, 2, 200)));
}

TEST(Remainder, Constants) {
  EXPECT_EQ(remainder_constant(build(Word::parse("1"))), Rational(5, 4));
  EXPECT_EQ(remainder_constant(build(Word::parse("11"))), Rational(25, 8));
}

// |1/n + 2^r log b_w(n)| <= C_w / n^2.
TEST(RemainderProperty, BoundHolds) {
  for (unsigned len = 1; len <= 3; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::vector<std::uint8_t> s(len);
      for (unsigned i = 0; i < len; ++i) s[i] = static_cast<std::uint8_t>((bits >> (len - 1 - i)) & 1);
      const auto e = build(Word(s));
      const Rational cw = remainder_constant(e);
      const Enclosure scale = Enclosure::exact(1L << len, 96);
      for (std::uint64_t n = 1; n <= 10000; n += (n < 100 ? 1 : 97)) {
        Enclosure err = Enclosure::reciprocal(n, 96) + scale * evaluate(e, n, 96);
        const Enclosure bound = Enclosure::of(cw / (to_rational(n) * to_rational(n)), 96);
        ASSERT_FALSE(err.magnitude() > bound.hi()) << Word(s).str() << " n=" << n;
      }
    }
  }
}

// The power series used by the engine reproduces direct evaluation.
TEST(Series, MatchesDirectEvaluation) {
  for (const char* text : {"1", "11", "010", "1101"}) {
    const Word w = Word::parse(text);
    const auto e = build(w);
    const auto g = series_coefficients(e, 30);
    ASSERT_EQ(g.size(), 29u);
    for (std::uint64_t n : {1000u, 4097u, 123456u}) {
      Enclosure sum = Enclosure::exact(0, 200);
      Enclosure y = Enclosure::of(Rational(1) / to_rational(n), 200);
      Enclosure yp = y * y;
      for (const auto& gm : g) {
        sum += Enclosure::of(gm, 200) * yp;
        yp *= y;
      }
      Enclosure direct = Enclosure::reciprocal(n, 200) + Enclosure::of(Rational(power(2, w.size())), 200) * evaluate(e, n, 200);
      EXPECT_LT((sum - direct).magnitude().to_double(), 1e-40) << text << " n=" << n;
    }
  }
}

TEST(IdentityPartialSum, PowersOfTwo) {
  const Enclosure s = identity_partial_sum(Word::parse("1"), 1, std::uint64_t{1} << 40, 128);
  const Enclosure gap = s + Enclosure::log2(128);
  EXPECT_LT(gap.magnitude().to_double(), 1e-11);
}

// w = 10, k = 1: terms are negative, so partial sums approach -log 2 from above.
// Python reference: deviation +1.8453e-05 at N = 2^22 (1772 terms).
TEST(IdentityPartialSum, ApproachFromAbove) {
  const Enclosure s = identity_partial_sum(Word::parse("10"), 1, std::uint64_t{1} << 22, 128);
  const Enclosure gap = s + Enclosure::log2(128);
  EXPECT_GT(gap.lo().to_double(), 1.84e-5);
  EXPECT_LT(gap.hi().to_double(), 1.85e-5);
}
