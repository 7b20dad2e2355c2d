#include "kempner/rational.hpp"

#include <stdexcept>

namespace kempner {

Integer to_integer(std::uint64_t value) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
  return out;
}

Rational to_rational(std::uint64_t value) { return Rational(to_integer(value)); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) {
    return value.get_num().get_str();
  }
  return value.get_str();
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer out;
  if (k > n) {
    return out;
  }
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer power(std::uint64_t base, std::uint64_t exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), to_integer(base).get_mpz_t(), exponent);
  return out;
}

namespace {

struct Fraction {
  Integer num;
  Integer den;
};

Fraction split_sum(std::span<const std::uint64_t> ds) {
  if (ds.size() == 1) {
    return {Integer(1), to_integer(ds[0])};
  }
  const auto mid = ds.size() / 2;
  Fraction left = split_sum(ds.first(mid));
  Fraction right = split_sum(ds.subspan(mid));
  Fraction out;
  out.num = left.num * right.den + right.num * left.den;
  out.den = left.den * right.den;
  return out;
}

}  // namespace

Rational reciprocal_sum(std::span<const std::uint64_t> denominators) {
  if (denominators.empty()) {
    return Rational(0);
  }
  for (auto d : denominators) {
    if (d == 0) {
      throw std::domain_error("reciprocal_sum: zero denominator");
    }
  }
  Fraction f = split_sum(denominators);
  Rational out(f.num, f.den);
  out.canonicalize();
  return out;
}

}  // namespace kempner
