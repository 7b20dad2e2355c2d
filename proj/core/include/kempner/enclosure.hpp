#pragma once

#include <cstdint>
#include <string>

#include "kempner/float.hpp"
#include "kempner/rational.hpp"

namespace kempner {

/// Certified interval [lo, hi].
///
/// Every operation rounds `lo` toward -inf and `hi` toward +inf, so the true
/// real value of any expression built from enclosures stays inside. The
/// result of a binary operation carries the larger of the two precisions.
class Enclosure {
 public:
  /// The degenerate interval [0, 0].
  explicit Enclosure(mpfr_prec_t precision = kDefaultPrecision);

  /// Throws std::invalid_argument if lo > hi or either bound is NaN.
  Enclosure(Float lo, Float hi);

  static Enclosure exact(long value, mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure of(const Rational& value, mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure between(const Rational& lo, const Rational& hi,
                           mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure reciprocal(std::uint64_t n, mpfr_prec_t precision = kDefaultPrecision);
  /// log(value) for a positive integer value.
  static Enclosure log_of(const Integer& value, mpfr_prec_t precision = kDefaultPrecision);
  static Enclosure log2(mpfr_prec_t precision = kDefaultPrecision);

  const Float& lo() const noexcept { return lo_; }
  const Float& hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return lo_.precision(); }

  /// hi - lo, rounded up.
  Float width() const;
  /// Upper bound on |x| over the interval.
  Float magnitude() const;
  /// Lower bound on |x| over the interval (zero if the interval straddles 0).
  Float mignitude() const;

  bool contains(const Rational& value) const;
  bool contains(const Enclosure& other) const;
  bool intersects(const Enclosure& other) const;
  bool contains_zero() const;

  /// Strictly below / above every point of `other`.
  bool certainly_less(const Enclosure& other) const;
  bool certainly_greater(const Enclosure& other) const;

  Enclosure& operator+=(const Enclosure& rhs);
  Enclosure& operator-=(const Enclosure& rhs);
  Enclosure& operator*=(const Enclosure& rhs);
  Enclosure& operator/=(const Enclosure& rhs);
  Enclosure operator-() const;

  friend Enclosure operator+(Enclosure lhs, const Enclosure& rhs) { return lhs += rhs; }
  friend Enclosure operator-(Enclosure lhs, const Enclosure& rhs) { return lhs -= rhs; }
  friend Enclosure operator*(Enclosure lhs, const Enclosure& rhs) { return lhs *= rhs; }
  friend Enclosure operator/(Enclosure lhs, const Enclosure& rhs) { return lhs /= rhs; }

  /// Adds the interval [lo, hi] of exact rationals, rounding outward.
  Enclosure& add_interval(const Rational& lo, const Rational& hi);

  /// Re-round both ends outward to `precision` bits.
  Enclosure rounded(mpfr_prec_t precision) const;

  /// "[lo, hi]" with `digits` significant digits.
  std::string to_string(int digits) const;

 private:
  Float lo_;
  Float hi_;
};

Enclosure log(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);
Enclosure square(const Enclosure& x);

/// Decimal digits used for printing at `precision` bits: ceil(p log10 2) + 2.
int decimal_digits(mpfr_prec_t precision);

}  // namespace kempner
