#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>

#include "kempner/rational.hpp"

namespace kempner {

/// Working precision used when callers do not ask for anything else.
inline constexpr mpfr_prec_t kDefaultPrecision = 128;

enum class Round { down, up, nearest };

constexpr mpfr_rnd_t to_mpfr(Round r) noexcept {
  switch (r) {
    case Round::down:
      return MPFR_RNDD;
    case Round::up:
      return MPFR_RNDU;
    case Round::nearest:
      break;
  }
  return MPFR_RNDN;
}

/// Owning wrapper around an `mpfr_t`.
///
/// The overloaded operators round to nearest and are meant for approximate
/// work (root iteration, demos). Anything that feeds a certified bound goes
/// through `Enclosure`, which calls MPFR with explicit directed rounding.
class Float {
 public:
  explicit Float(mpfr_prec_t precision = kDefaultPrecision);
  Float(long value, mpfr_prec_t precision);
  Float(const Rational& value, mpfr_prec_t precision, Round round = Round::nearest);

  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  /// Copy rounded to `precision` bits in direction `round`.
  Float rounded(mpfr_prec_t precision, Round round) const;

  double to_double(Round round = Round::nearest) const;
  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

  /// Scientific decimal with `digits` significant digits, rounded per `round`.
  std::string to_decimal(int digits, Round round = Round::nearest) const;

  Float& operator+=(const Float& rhs);
  Float& operator-=(const Float& rhs);
  Float& operator*=(const Float& rhs);
  Float& operator/=(const Float& rhs);

  friend Float operator+(Float lhs, const Float& rhs) { return lhs += rhs; }
  friend Float operator-(Float lhs, const Float& rhs) { return lhs -= rhs; }
  friend Float operator*(Float lhs, const Float& rhs) { return lhs *= rhs; }
  friend Float operator/(Float lhs, const Float& rhs) { return lhs /= rhs; }
  Float operator-() const;

  friend bool operator==(const Float& a, const Float& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Float& a, const Float& b);

 private:
  mpfr_t value_;
};

Float abs(const Float& x);
Float sqrt(const Float& x);
Float hypot(const Float& x, const Float& y);

}  // namespace kempner
