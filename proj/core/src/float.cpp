#include "kempner/float.hpp"

#include <algorithm>
#include <vector>

namespace kempner {

namespace {

mpfr_prec_t joint_precision(const Float& a, const Float& b) {
  return std::max(a.precision(), b.precision());
}

void widen_to(Float& x, mpfr_prec_t precision) {
  if (x.precision() < precision) {
    mpfr_prec_round(x.get(), precision, MPFR_RNDN);
  }
}

}  // namespace

Float::Float(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Float::Float(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Float::Float(const Rational& value, mpfr_prec_t precision, Round round) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), to_mpfr(round));
}

Float::Float(const Float& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

Float Float::rounded(mpfr_prec_t precision, Round round) const {
  Float out(precision);
  mpfr_set(out.value_, value_, to_mpfr(round));
  return out;
}

double Float::to_double(Round round) const { return mpfr_get_d(value_, to_mpfr(round)); }

std::string Float::to_decimal(int digits, Round round) const {
  const char* fmt = "%.*RNe";
  if (round == Round::down) {
    fmt = "%.*RDe";
  } else if (round == Round::up) {
    fmt = "%.*RUe";
  }
  const int n = mpfr_snprintf(nullptr, 0, fmt, digits - 1, value_);
  std::vector<char> buffer(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buffer.data(), buffer.size(), fmt, digits - 1, value_);
  return std::string(buffer.data(), static_cast<std::size_t>(n));
}

Float& Float::operator+=(const Float& rhs) {
  widen_to(*this, joint_precision(*this, rhs));
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Float& Float::operator-=(const Float& rhs) {
  widen_to(*this, joint_precision(*this, rhs));
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Float& Float::operator*=(const Float& rhs) {
  widen_to(*this, joint_precision(*this, rhs));
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Float& Float::operator/=(const Float& rhs) {
  widen_to(*this, joint_precision(*this, rhs));
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Float Float::operator-() const {
  Float out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Float& a, const Float& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Float abs(const Float& x) {
  Float out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Float sqrt(const Float& x) {
  Float out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Float hypot(const Float& x, const Float& y) {
  Float out(std::max(x.precision(), y.precision()));
  mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

}  // namespace kempner
