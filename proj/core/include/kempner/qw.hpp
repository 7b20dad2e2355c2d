#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kempner/digitstat.hpp"
#include "kempner/enclosure.hpp"
#include "kempner/rational.hpp"

/// Symbolic log b_w(n) as a signed sum of log(2^l n + c).
namespace kempner::qw {

/// sign * log(2^scale_exponent * n + offset).
struct LogAffineTerm {
  int sign = 1;
  unsigned scale_exponent = 1;
  std::uint64_t offset = 0;

  friend auto operator<=>(const LogAffineTerm&, const LogAffineTerm&) = default;
};

class QwExpression {
 public:
  QwExpression(Word word, std::vector<LogAffineTerm> terms);

  const Word& word() const noexcept { return word_; }
  /// Sorted by (scale_exponent, offset, sign).
  const std::vector<LogAffineTerm>& terms() const noexcept { return terms_; }

  QwExpression negated() const;

  /// "+log(2n+1) -log(2n+2) ..." in canonical term order.
  std::string to_string() const;
  /// "((2n+1)(4n+2))/((2n+2)(4n+1))".
  std::string rational_function() const;

 private:
  Word word_;
  std::vector<LogAffineTerm> terms_;
};

/// Flattens the four-case recursion seeded at (w_1..w_{m-1}, w_m).
QwExpression build(const Word& w);

struct AsymptoticCoefficients {
  long sign_sum = 0;      // sum of signs
  long scale_sum = 0;     // sum of sign * l
  Rational offset_sum;    // sum of sign * c / 2^l
};

AsymptoticCoefficients asymptotic_coefficients(const QwExpression& e);

/// Certified enclosure of sum sign * log(2^l n + c). n = 0 is allowed only
/// when every offset is positive; otherwise std::domain_error.
Enclosure evaluate(const QwExpression& e, std::uint64_t n, mpfr_prec_t precision = kDefaultPrecision);

/// C_w = 2^(r-1) * sum (c / 2^l)^2, so that |1/n + 2^r log b_w(n)| <= C_w / n^2 for n >= 1.
Rational remainder_constant(const QwExpression& e);

/// Coefficients g_2..g_max_order of the expansion
///   1/n + 2^r log b_w(n) = sum_{m>=2} g_m n^-m,   n >= 2,
/// with g_m = 2^r (-1)^(m+1)/m * sum sign (c/2^l)^m. Index i holds g_{i+2}.
std::vector<Rational> series_coefficients(const QwExpression& e, unsigned max_order);

/// log b_w(0) when it is finite (all offsets positive).
std::optional<Enclosure> log_at_zero(const QwExpression& e, mpfr_prec_t precision = kDefaultPrecision);

/// Enclosure of sum_{1<=n<=N, a_w(n)=k} log b_w(n); no tail is included.
Enclosure identity_partial_sum(const Word& w, unsigned k, std::uint64_t N,
                               mpfr_prec_t precision = kDefaultPrecision);

}  // namespace kempner::qw
