#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kempner/enclosure.hpp"
#include "kempner/float.hpp"
#include "kempner/rational.hpp"

namespace kempner::transfer {

/// P(X) = sum_{0<=k<=d} a_k X^(d-k), coefficients stored highest degree first.
class Polynomial {
 public:
  /// Throws std::invalid_argument if `coefficients` is empty or a_0 == 0.
  explicit Polynomial(std::vector<Rational> coefficients);

  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }
  const Rational& operator[](std::size_t k) const { return coefficients_[k]; }
  Rational evaluate(const Rational& x) const;
  std::string to_string() const;

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Rational> coefficients_;
};

/// (b-1) X^(b-2) + ... + 2X + 1. Throws std::invalid_argument for b < 2.
Polynomial corollary_polynomial(unsigned b);

/// 1 + X + ... + X^(b-2) - (b-1) X^(b-1), the expansion of (1-X) P(X).
Polynomial corollary_expansion(unsigned b);

/// A root approximation z with a certified radius: the disk of that radius
/// around z contains a root of P. When all disks are pairwise disjoint each
/// holds exactly one root.
struct Root {
  Float re;
  Float im;
  Float radius;
  Enclosure modulus;  // |z| widened by the radius
};

struct RootReport {
  std::vector<Root> roots;
  bool isolated = false;  // disks pairwise disjoint
  Enclosure max_modulus;
  unsigned iterations = 0;
};

/// Aberth iteration followed by inclusion radii
///   r_j = d |P(z_j)| / (|a_0| prod_{k!=j} |z_j - z_k|).
/// Throws std::invalid_argument for degree 0 and std::runtime_error when the
/// iteration does not converge.
RootReport find_roots(const Polynomial& p, mpfr_prec_t precision = kDefaultPrecision);

/// Enclosure of max |z| over the roots of P.
Enclosure max_root_modulus(const Polynomial& p, mpfr_prec_t precision = kDefaultPrecision);

/// u^(P)_n = sum_k a_k u_(n-k) for n = d .. |u|-1, exact.
/// Throws std::domain_error when |u| <= d.
std::vector<Rational> filter_sequence(const Polynomial& p, std::span<const Rational> u);
std::vector<Float> filter_sequence(const Polynomial& p, std::span<const Float> u,
                                   mpfr_prec_t precision = kDefaultPrecision);

/// a_0 * (phi_1 o ... o phi_d)(u) with phi_j(u)_n = u_n - z_j u_(n-1), using the
/// roots from find_roots. Same index range as filter_sequence; real parts only.
std::vector<Float> compose_root_filters(const Polynomial& p, const std::vector<Root>& roots,
                                        std::span<const Float> u,
                                        mpfr_prec_t precision = kDefaultPrecision);

struct DecayProfile {
  enum class Kind { geometric, harmonic };
  Kind kind = Kind::harmonic;
  Rational ratio;  // geometric only, |ratio| < 1

  static DecayProfile geometric(Rational ratio);
  static DecayProfile harmonic() { return {}; }
  std::string to_string() const;
};

struct DemoReport {
  unsigned b = 0;
  Rational ell;
  std::uint64_t n_max = 0;
  Float max_deviation;  // max |u^(P)_n - ell| over the last 10% of indices
  std::uint64_t window_first = 0;
  std::vector<Float> filtered;
};

/// Builds u_n = 2 ell / (b(b-1)) + decay(n) for n = 1..n_max and applies the
/// corollary filter. Throws std::invalid_argument for b < 3, a geometric
/// ratio outside (-1, 1), or n_max < b.
DemoReport corollary_demo(unsigned b, const Rational& ell, const DecayProfile& decay,
                          std::uint64_t n_max, mpfr_prec_t precision = kDefaultPrecision);

}  // namespace kempner::transfer
