#pragma once

#include <cstdint>
#include <vector>

#include "kempner/digitstat.hpp"
#include "kempner/enclosure.hpp"
#include "kempner/rational.hpp"

/// Certified restricted harmonic sums and their closed-form limits.
namespace kempner::engine {

struct SumOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  /// Worker threads. Work is split into fixed blocks that are combined in
  /// order, so results are bit-identical for every value.
  unsigned threads = 1;
};

/// One row of a convergence report.
struct SeriesResult {
  StatisticSpec spec;
  unsigned k = 0;
  std::uint64_t N = 0;
  Enclosure value;        // tail already folded in
  Rational tail_bound;    // magnitude of the omitted part
  Enclosure limit;
  Enclosure gap;          // value - limit
};

/// 2 log b / (b - 1) for digit sums, 2^|w| log 2 for block counts.
Enclosure limit_value(const StatisticSpec& spec, mpfr_prec_t precision = kDefaultPrecision);

/// A_k through the telescoped identity
///   A_k = 2 - sum_{n>=1, 1<=s_2(n)<=k-1} 1/(n(2n+1)),
/// summed over n <= N. The omitted part lies in [-2/(4N+3), 0].
/// Throws std::domain_error for N < 1 and std::invalid_argument for k < 1.
SeriesResult a_k_base2(unsigned k, std::uint64_t N, const SumOptions& options = {});

/// Direct sum of 1/n over s_b(n) = k, n <= N = b^J - 1, plus the tail
/// [0, C(J+k,k)/b^J / (1 - rho)] with rho = (J+1+k)/((J+1) b).
/// Throws std::invalid_argument unless N = b^J - 1, and std::domain_error
/// when rho >= 1 (J too small for the geometric tail bound).
SeriesResult u_k_base_b(unsigned b, unsigned k, std::uint64_t N, const SumOptions& options = {});

/// d_k = 2^r log 2 + sum_{n<=N, a_w(n)=k} e_w(n) + [-C_w/N, C_w/N] where
/// e_w(n) = 1/n + 2^r log b_w(n) = O(1/n^2). For k = 0 the n = 0 term of the
/// log b_w identity is added back when log b_w(0) is finite.
/// Throws std::domain_error for N < 1 and for w = 0^l (l >= 2) with k = 0,
/// where that identity does not hold.
SeriesResult d_k_accelerated(const Word& w, unsigned k, std::uint64_t N, const SumOptions& options = {});

/// One row per k in [k_first, k_last], ascending. Digit sums in base 2 use
/// a_k_base2; other bases use u_k_base_b with N lowered to the largest
/// b^J - 1 <= N; block counts use d_k_accelerated. k = 0 for digit sums
/// is the empty class. An empty range gives an empty table.
std::vector<SeriesResult> convergence_table(const StatisticSpec& spec, unsigned k_first,
                                            unsigned k_last, std::uint64_t N,
                                            const SumOptions& options = {});

}  // namespace kempner::engine
