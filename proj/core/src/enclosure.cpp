#include "kempner/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 target expected");

namespace kempner {

namespace {

Float at(mpfr_prec_t precision) { return Float(precision); }

// Raise both bounds to at least `precision` bits; exact because it only adds bits.
void promote(Float& x, mpfr_prec_t precision) {
  if (x.precision() < precision) {
    mpfr_prec_round(x.get(), precision, MPFR_RNDN);
  }
}

}  // namespace

Enclosure::Enclosure(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Enclosure::Enclosure(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) {
    throw std::invalid_argument("Enclosure: NaN bound");
  }
  if (mpfr_cmp(lo_.get(), hi_.get()) > 0) {
    throw std::invalid_argument("Enclosure: lo > hi");
  }
  const auto p = std::max(lo_.precision(), hi_.precision());
  promote(lo_, p);
  promote(hi_, p);
}

Enclosure Enclosure::exact(long value, mpfr_prec_t precision) {
  Enclosure out(precision);
  mpfr_set_si(out.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), value, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::of(const Rational& value, mpfr_prec_t precision) {
  return between(value, value, precision);
}

Enclosure Enclosure::between(const Rational& lo, const Rational& hi, mpfr_prec_t precision) {
  if (lo > hi) {
    throw std::invalid_argument("Enclosure::between: lo > hi");
  }
  Enclosure out(precision);
  mpfr_set_q(out.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return out;
}

Enclosure Enclosure::reciprocal(std::uint64_t n, mpfr_prec_t precision) {
  if (n == 0) {
    throw std::domain_error("Enclosure::reciprocal: n = 0");
  }
  Enclosure out(precision);
  Float denom(64);
  mpfr_set_ui(denom.get(), static_cast<unsigned long>(n), MPFR_RNDN);  // exact
  mpfr_ui_div(out.lo_.get(), 1, denom.get(), MPFR_RNDD);
  mpfr_ui_div(out.hi_.get(), 1, denom.get(), MPFR_RNDU);
  return out;
}

Enclosure Enclosure::log_of(const Integer& value, mpfr_prec_t precision) {
  if (value <= 0) {
    throw std::domain_error("Enclosure::log_of: non-positive argument");
  }
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(value.get_mpz_t(), 2));
  Float exact_value(std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_z(exact_value.get(), value.get_mpz_t(), MPFR_RNDN);
  Enclosure out(precision);
  mpfr_log(out.lo_.get(), exact_value.get(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), exact_value.get(), MPFR_RNDU);
  return out;
}

Enclosure Enclosure::log2(mpfr_prec_t precision) {
  Enclosure out(precision);
  mpfr_const_log2(out.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(out.hi_.get(), MPFR_RNDU);
  return out;
}

Float Enclosure::width() const {
  Float out = at(precision());
  mpfr_sub(out.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Float Enclosure::magnitude() const {
  Float out = at(precision());
  if (mpfr_cmpabs(lo_.get(), hi_.get()) > 0) {
    mpfr_abs(out.get(), lo_.get(), MPFR_RNDU);
  } else {
    mpfr_abs(out.get(), hi_.get(), MPFR_RNDU);
  }
  return out;
}

Float Enclosure::mignitude() const {
  Float out = at(precision());
  if (contains_zero()) {
    return out;
  }
  if (lo_.sign() > 0) {
    mpfr_set(out.get(), lo_.get(), MPFR_RNDD);
  } else {
    mpfr_neg(out.get(), hi_.get(), MPFR_RNDD);
  }
  return out;
}

bool Enclosure::contains(const Rational& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool Enclosure::intersects(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) &&
         mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

bool Enclosure::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Enclosure::certainly_less(const Enclosure& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get()) != 0;
}

bool Enclosure::certainly_greater(const Enclosure& other) const {
  return other.certainly_less(*this);
}

Enclosure& Enclosure::operator+=(const Enclosure& rhs) {
  const auto p = std::max(precision(), rhs.precision());
  promote(lo_, p);
  promote(hi_, p);
  mpfr_add(lo_.get(), lo_.get(), rhs.lo_.get(), MPFR_RNDD);
  mpfr_add(hi_.get(), hi_.get(), rhs.hi_.get(), MPFR_RNDU);
  return *this;
}

Enclosure& Enclosure::operator-=(const Enclosure& rhs) {
  const auto p = std::max(precision(), rhs.precision());
  promote(lo_, p);
  promote(hi_, p);
  mpfr_sub(lo_.get(), lo_.get(), rhs.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi_.get(), hi_.get(), rhs.lo_.get(), MPFR_RNDU);
  return *this;
}

Enclosure& Enclosure::operator*=(const Enclosure& rhs) {
  const auto p = std::max(precision(), rhs.precision());
  const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr b[2] = {rhs.lo_.get(), rhs.hi_.get()};
  Float lo = at(p);
  Float hi = at(p);
  Float t = at(p);
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) {
        mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      }
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) {
        mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      }
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Enclosure& Enclosure::operator/=(const Enclosure& rhs) {
  if (rhs.contains_zero()) {
    throw std::domain_error("Enclosure: division by an interval containing zero");
  }
  const auto p = std::max(precision(), rhs.precision());
  Enclosure inv(p);
  mpfr_ui_div(inv.lo_.get(), 1, rhs.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, rhs.lo_.get(), MPFR_RNDU);
  return *this *= inv;
}

Enclosure Enclosure::operator-() const {
  Enclosure out(precision());
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Enclosure& Enclosure::add_interval(const Rational& lo, const Rational& hi) {
  return *this += Enclosure::between(lo, hi, precision());
}

Enclosure Enclosure::rounded(mpfr_prec_t precision) const {
  return Enclosure(lo_.rounded(precision, Round::down), hi_.rounded(precision, Round::up));
}

std::string Enclosure::to_string(int digits) const {
  return "[" + lo_.to_decimal(digits, Round::down) + ", " + hi_.to_decimal(digits, Round::up) + "]";
}

Enclosure log(const Enclosure& x) {
  if (x.lo().sign() <= 0) {
    throw std::domain_error("log: enclosure not strictly positive");
  }
  Float lo(x.precision());
  Float hi(x.precision());
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure sqrt(const Enclosure& x) {
  if (x.lo().sign() < 0) {
    throw std::domain_error("sqrt: enclosure has negative part");
  }
  Float lo(x.precision());
  Float hi(x.precision());
  mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure square(const Enclosure& x) {
  Float lo(x.precision());
  Float hi(x.precision());
  const Float m = x.mignitude();
  const Float g = x.magnitude();
  mpfr_sqr(lo.get(), m.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), g.get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

int decimal_digits(mpfr_prec_t precision) {
  return static_cast<int>(std::ceil(static_cast<double>(precision) * std::log10(2.0))) + 2;
}

}  // namespace kempner
