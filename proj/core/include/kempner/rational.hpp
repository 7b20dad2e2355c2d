#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>

namespace kempner {

/// Exact fraction, always in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Integer to_integer(std::uint64_t value);
Rational to_rational(std::uint64_t value);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Integer binomial(std::uint64_t n, std::uint64_t k);
Integer power(std::uint64_t base, std::uint64_t exponent);

/// Exact sum of 1/n over `denominators` (all nonzero).
///
/// Uses binary splitting so that large sets (10^6 terms) stay tractable: the
/// unreduced numerator/denominator pairs are combined pairwise and only the
/// final fraction is canonicalized.
Rational reciprocal_sum(std::span<const std::uint64_t> denominators);

}  // namespace kempner
