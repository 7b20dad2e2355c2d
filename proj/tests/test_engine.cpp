#include <gtest/gtest.h>

#include <stdexcept>

#include "kempner/engine.hpp"
#include "kempner/oracle.hpp"
#include "kempner/qw.hpp"

using namespace kempner;
using namespace kempner::engine;

namespace {

Enclosure decimal(const char* text, mpfr_prec_t p = 200) {
  Float lo(p);
  Float hi(p);
  mpfr_set_str(lo.get(), text, 10, MPFR_RNDD);
  mpfr_set_str(hi.get(), text, 10, MPFR_RNDU);
  return Enclosure(lo, hi);
}

// 2 sum_{m>=1} 1/(2^m + 1) and sum_{j>=1} 1/(2^j - 1), 50 digits from mpmath.
constexpr const char* kA2 = "1.5289995606968884183826394945109969651153939977151";
constexpr const char* kErdosBorwein = "1.6066951524152917637833015231909245804805796715058";

}  // namespace

TEST(Limits, Values) {
  const Enclosure s2 = limit_value(StatisticSpec::digit_sum(2));
  EXPECT_TRUE(s2.intersects(Enclosure::exact(2) * Enclosure::log2()));
  const Enclosure w11 = limit_value(StatisticSpec::block_count(Word::parse("11")));
  EXPECT_TRUE(w11.intersects(Enclosure::exact(4) * Enclosure::log2()));
  const Enclosure s3 = limit_value(StatisticSpec::digit_sum(3));
  EXPECT_TRUE(s3.intersects(Enclosure::log_of(Integer(3))));
  // s2 and word:1 name the same constant.
  EXPECT_TRUE(s2.intersects(limit_value(StatisticSpec::block_count(Word::parse("1")))));
}

TEST(AkBase2, FirstValueIsExactlyTwo) {
  const auto r = a_k_base2(1, 1000);
  EXPECT_TRUE(r.value.width().is_zero());
  EXPECT_TRUE(r.value.contains(Rational(2)));
  EXPECT_EQ(r.tail_bound, Rational(0));
}

TEST(AkBase2, ClosedFormForKTwo) {
  const auto r = a_k_base2(2, 100000);
  EXPECT_TRUE(r.value.intersects(decimal(kA2)));
  EXPECT_EQ(r.tail_bound, Rational(2, 400003));
}

TEST(AkBase2, Errors) {
  EXPECT_THROW(a_k_base2(0, 10), std::invalid_argument);
  EXPECT_THROW(a_k_base2(2, 0), std::domain_error);
}

TEST(AkBase2, GapsArePositiveAndDecreasing) {
  Enclosure previous = a_k_base2(2, 200000).value;
  for (unsigned k = 3; k <= 8; ++k) {
    const auto r = a_k_base2(k, 200000);
    EXPECT_TRUE(r.value.certainly_less(previous)) << k;
    EXPECT_TRUE(r.gap.lo().sign() > 0) << k;
    previous = r.value;
  }
}

// A_k is the class sum, so the exact partial sum at N must lie below it.
TEST(AkBase2, DominatesExactPartialSum) {
  for (unsigned k = 2; k <= 5; ++k) {
    const Rational partial = oracle::partial_sum_exact({StatisticSpec::digit_sum(2), k, 4096});
    EXPECT_TRUE(a_k_base2(k, 4096).value.hi() >= Float(partial, 200, Round::down)) << k;
  }
}

TEST(UkBaseB, GeometricClass) {
  const auto r = u_k_base_b(3, 1, 14348906);  // 3^15 - 1
  EXPECT_TRUE(r.value.contains(Rational(3, 2)));
  const auto ten = u_k_base_b(10, 1, 999999);
  EXPECT_TRUE(ten.value.contains(Rational(10, 9)));
}

TEST(UkBaseB, MatchesOracleAtSameN) {
  for (unsigned k = 1; k <= 6; ++k) {
    const Rational s = oracle::partial_sum_exact({StatisticSpec::digit_sum(3), k, 59048});
    const auto r = u_k_base_b(3, k, 59048);  // 3^10 - 1
    EXPECT_TRUE(r.value.lo() <= Float(s, 200, Round::up)) << k;
    Enclosure upper = Enclosure::of(s + r.tail_bound);
    EXPECT_TRUE(r.value.hi() >= upper.lo()) << k;
  }
}

TEST(UkBaseB, Errors) {
  EXPECT_THROW(u_k_base_b(3, 1, 100), std::invalid_argument);   // not 3^J - 1
  EXPECT_THROW(u_k_base_b(3, 0, 26), std::invalid_argument);
  EXPECT_THROW(u_k_base_b(1, 1, 26), std::invalid_argument);
  EXPECT_THROW(u_k_base_b(3, 20, 26), std::domain_error);       // rho >= 1
}

TEST(DkAccelerated, WordOneMatchesDigitSum) {
  for (unsigned k = 1; k <= 5; ++k) {
    const auto a = a_k_base2(k, 50000);
    const auto d = d_k_accelerated(Word::parse("1"), k, 50000);
    EXPECT_TRUE(a.value.intersects(d.value)) << k;
  }
  EXPECT_TRUE(d_k_accelerated(Word::parse("1"), 1, 50000).value.contains(Rational(2)));
}

TEST(DkAccelerated, ErdosBorweinConstant) {
  // w = 10, k = 0 is the class 2^j - 1.
  const auto r = d_k_accelerated(Word::parse("10"), 0, 1 << 16);
  EXPECT_TRUE(r.value.intersects(decimal(kErdosBorwein)));
}

// The accelerated sum agrees with direct evaluation of every e_w(n) term,
// which checks the series path (n >= 2^10) against plain logarithms.
TEST(DkAccelerated, SeriesPathMatchesDirectTerms) {
  const Word w = Word::parse("011");
  const unsigned k = 1;
  const std::uint64_t N = 6000;
  const auto e = qw::build(w);
  const Enclosure scale = Enclosure::exact(8, 160);
  Enclosure direct = scale * Enclosure::log2(160);
  digitstat::for_each_in_class(StatisticSpec::block_count(w), k, N, [&](std::uint64_t n) {
    direct += Enclosure::reciprocal(n, 160) + scale * qw::evaluate(e, n, 160);
  });
  const auto r = d_k_accelerated(w, k, N, {160, 1});
  EXPECT_TRUE(r.value.contains(direct));
  EXPECT_EQ(r.tail_bound, qw::remainder_constant(e) / to_rational(N));
}

TEST(DkAccelerated, RejectsAllZeroWordAtKZero) {
  EXPECT_THROW(d_k_accelerated(Word::parse("00"), 0, 100), std::domain_error);
  EXPECT_NO_THROW(d_k_accelerated(Word::parse("00"), 1, 100));
  EXPECT_NO_THROW(d_k_accelerated(Word::parse("0"), 0, 100));
  EXPECT_THROW(d_k_accelerated(Word::parse("1"), 1, 0), std::domain_error);
}

TEST(DkAccelerated, DominatesExactPartialSum) {
  const Word w = Word::parse("11");
  for (unsigned k = 0; k <= 3; ++k) {
    const Rational partial = oracle::partial_sum_exact({StatisticSpec::block_count(w), k, 1 << 14});
    EXPECT_TRUE(d_k_accelerated(w, k, 1 << 14).value.lo() >= Float(partial, 200, Round::up)) << k;
  }
}

TEST(Table, RoutesAndOrders) {
  const auto rows = convergence_table(StatisticSpec::digit_sum(2), 0, 3, 1000);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].k, 0u);
  EXPECT_TRUE(rows[0].value.width().is_zero());
  EXPECT_TRUE(rows[0].value.contains(Rational(0)));
  EXPECT_EQ(rows[3].k, 3u);

  const auto base3 = convergence_table(StatisticSpec::digit_sum(3), 1, 2, 1000);
  ASSERT_EQ(base3.size(), 2u);
  EXPECT_EQ(base3[0].N, 728u);  // 3^6 - 1

  EXPECT_TRUE(convergence_table(StatisticSpec::digit_sum(2), 5, 2, 1000).empty());
}

// The fixed block partition makes the result independent of thread count.
TEST(Determinism, ThreadCountDoesNotChangeBits) {
  const auto one = a_k_base2(6, 300000, {128, 1});
  const auto four = a_k_base2(6, 300000, {128, 4});
  EXPECT_TRUE(one.value.lo() == four.value.lo());
  EXPECT_TRUE(one.value.hi() == four.value.hi());

  const auto d1 = d_k_accelerated(Word::parse("11"), 2, 200000, {128, 1});
  const auto d3 = d_k_accelerated(Word::parse("11"), 2, 200000, {128, 3});
  EXPECT_TRUE(d1.value.lo() == d3.value.lo());
  EXPECT_TRUE(d1.value.hi() == d3.value.hi());

  const auto u1 = u_k_base_b(3, 5, 531440, {128, 1});
  const auto u2 = u_k_base_b(3, 5, 531440, {128, 2});
  EXPECT_TRUE(u1.value.lo() == u2.value.lo());
  EXPECT_TRUE(u1.value.hi() == u2.value.hi());
}
