#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "kempner/transfer.hpp"

using namespace kempner;
using namespace kempner::transfer;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> q;
  for (long x : c) q.emplace_back(x);
  return Polynomial(std::move(q));
}

Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Polynomial, Construction) {
  EXPECT_THROW(Polynomial({}), std::invalid_argument);
  EXPECT_THROW(poly({0, 1}), std::invalid_argument);
  const auto p = poly({3, 2, 1});
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p.to_string(), "3X^2 + 2X + 1");
  EXPECT_EQ(p.evaluate(Rational(-1)), Rational(2));
  EXPECT_EQ(poly({1, 0, -1}).to_string(), "X^2 - 1");
}

TEST(Corollary, Coefficients) {
  EXPECT_EQ(corollary_polynomial(3), poly({2, 1}));
  EXPECT_EQ(corollary_polynomial(2), poly({1}));
  EXPECT_THROW(corollary_polynomial(1), std::invalid_argument);
  for (unsigned b = 2; b <= 12; ++b) {
    const auto p = corollary_polynomial(b);
    Rational sum;
    for (const auto& c : p.coefficients()) sum += c;
    EXPECT_EQ(sum, Rational(b * (b - 1) / 2)) << b;
  }
}

TEST(Corollary, TimesOneMinusX) {
  for (unsigned b = 2; b <= 12; ++b) {
    EXPECT_EQ(poly({-1, 1}) * corollary_polynomial(b), corollary_expansion(b)) << b;
  }
}

TEST(Roots, Linear) {
  const auto m = max_root_modulus(poly({2, 1}));
  EXPECT_TRUE(m.contains(Rational(1, 2)));
}

TEST(Roots, Quadratic) {
  // Roots (-1 +- i sqrt 2)/3, modulus 1/sqrt 3.
  const auto report = find_roots(poly({3, 2, 1}), 128);
  EXPECT_TRUE(report.isolated);
  ASSERT_EQ(report.roots.size(), 2u);
  const Enclosure inv_sqrt3 = Enclosure::exact(1, 200) / sqrt(Enclosure::exact(3, 200));
  EXPECT_TRUE(report.max_modulus.intersects(inv_sqrt3));
  EXPECT_LT(report.max_modulus.width().to_double(), 1e-35);
}

TEST(Roots, CorollaryPolynomialsInsideUnitDisk) {
  for (unsigned b = 3; b <= 12; ++b) {
    const auto report = find_roots(corollary_polynomial(b));
    EXPECT_TRUE(report.isolated) << b;
    EXPECT_LT(report.max_modulus.hi(), Float(1, 2)) << b;
  }
}

TEST(Roots, RootsOutsideTheDiskAreReportedHonestly) {
  const auto m = max_root_modulus(poly({1, 0, -4}));  // +-2
  EXPECT_TRUE(m.contains(Rational(2)));
}

TEST(Roots, DegreeZero) {
  EXPECT_THROW(find_roots(poly({5})), std::invalid_argument);
}

TEST(Filter, ConstantSequence) {
  const std::vector<Rational> u(10, Rational(7, 3));
  const auto f = filter_sequence(poly({2, 1}), u);
  ASSERT_EQ(f.size(), 9u);
  for (const auto& x : f) EXPECT_EQ(x, Rational(7));
}

TEST(Filter, AnnihilatesGeometric) {
  const Rational z(-2, 5);
  std::vector<Rational> u;
  Rational p(1);
  for (int n = 0; n < 20; ++n) {
    u.push_back(p);
    p *= z;
  }
  const auto f = filter_sequence(Polynomial({Rational(1), -z}), u);
  for (const auto& x : f) EXPECT_EQ(x, Rational(0));
}

TEST(Filter, TooShort) {
  const std::vector<Rational> u(2, Rational(1));
  EXPECT_THROW(filter_sequence(poly({1, 2, 3}), u), std::domain_error);
}

TEST(FilterProperty, LinearInRationalMode) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-50, 50);
  const auto p = corollary_polynomial(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> u;
    std::vector<Rational> v;
    for (int i = 0; i < 15; ++i) {
      u.push_back(fraction(d(rng), 7));
      v.push_back(fraction(d(rng), 11));
    }
    const Rational alpha = fraction(d(rng), 3);
    const Rational beta = fraction(d(rng), 5);
    std::vector<Rational> mix;
    for (int i = 0; i < 15; ++i) mix.push_back(alpha * u[i] + beta * v[i]);
    const auto fu = filter_sequence(p, u);
    const auto fv = filter_sequence(p, v);
    const auto fm = filter_sequence(p, mix);
    for (std::size_t i = 0; i < fm.size(); ++i) EXPECT_EQ(fm[i], alpha * fu[i] + beta * fv[i]);
  }
}

// Applying (X - z_j) for every root, in any order, reproduces the direct filter.
TEST(FilterProperty, CompositionOfRootFilters) {
  const mpfr_prec_t prec = 128;
  Float tolerance(1, prec);
  mpfr_mul_2si(tolerance.get(), tolerance.get(), 8 - prec, MPFR_RNDN);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-1000, 1000);
  for (unsigned b = 3; b <= 8; ++b) {
    const auto p = corollary_polynomial(b);
    auto roots = find_roots(p, prec).roots;
    std::vector<Float> u;
    for (int i = 0; i < 40; ++i) u.emplace_back(fraction(d(rng), 1000), prec);
    const auto direct = filter_sequence(p, u, prec);
    for (int order = 0; order < 2; ++order) {
      if (order == 1) std::reverse(roots.begin(), roots.end());
      const auto composed = compose_root_filters(p, roots, u, prec);
      ASSERT_EQ(composed.size(), direct.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        EXPECT_LE(abs(direct[i] - composed[i]), tolerance) << "b=" << b << " i=" << i;
      }
    }
  }
}

TEST(Demo, GeometricDecay) {
  const auto r = corollary_demo(3, Rational(1), DecayProfile::geometric(Rational(1, 2)), 200);
  EXPECT_LT(r.max_deviation.to_double(), 1e-30);
  EXPECT_EQ(r.filtered.size(), 199u);
}

TEST(Demo, HarmonicDecay) {
  const auto r = corollary_demo(3, Rational(1), DecayProfile::harmonic(), 10000);
  EXPECT_LT(r.max_deviation.to_double(), 1e-3);
  EXPECT_GT(r.max_deviation.to_double(), 1e-4);  // not annihilated, only damped
}

TEST(Demo, ZeroLimitTendsToZero) {
  const auto r = corollary_demo(10, Rational(0), DecayProfile::harmonic(), 10000);
  EXPECT_LT(r.max_deviation.to_double(), 0.01);
  const auto early = abs(r.filtered.front()).to_double();
  EXPECT_GT(early, r.max_deviation.to_double());
}

TEST(Demo, Errors) {
  EXPECT_THROW(corollary_demo(2, Rational(1), DecayProfile::harmonic(), 100), std::invalid_argument);
  EXPECT_THROW(DecayProfile::geometric(Rational(3, 2)), std::invalid_argument);
  EXPECT_THROW(corollary_demo(5, Rational(1), DecayProfile::harmonic(), 4), std::invalid_argument);
}
