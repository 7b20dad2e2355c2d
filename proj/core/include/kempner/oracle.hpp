#pragma once

#include <cstdint>
#include <vector>

#include "kempner/digitstat.hpp"
#include "kempner/rational.hpp"

/// Exact-rational ground truth. Nothing in here rounds.
namespace kempner::oracle {

struct ClassQuery {
  StatisticSpec spec;
  unsigned k = 0;
  std::uint64_t limit = 1;  // inclusive upper end N of the summation range
};

/// Outcome of an exact identity check; both sides are kept for diagnostics.
struct IdentityCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

/// H_n = 1 + 1/2 + ... + 1/n. Throws std::domain_error for n = 0.
Rational harmonic(std::uint64_t n);

/// All 1 <= n <= N with statistic value k, ascending.
std::vector<std::uint64_t> enumerate_class(const ClassQuery& q);

/// Exact sum of 1/n over enumerate_class(q).
Rational partial_sum_exact(const ClassQuery& q);

/// Residue split of the digit-sum class over [1, b^(J+1) - 1]:
///   sum_{s_b(m)=k} 1/m  =  (1/b) sum_{n<b^J, s_b(n)=k} 1/n
///                        + sum_{j=1}^{b-1} sum_{0<=n<b^J, s_b(n)=k-j} 1/(bn+j).
IdentityCheck split_identity_check(unsigned b, unsigned k, unsigned J);

/// sum_{n<=N} v_n = H_{bN+b-1} - H_{b-1} - H_N with
/// v_n = sum_{j=0}^{b-1} 1/(bn+j) - 1/n.
IdentityCheck vsum_identity_check(unsigned b, std::uint64_t N);

/// vsum_identity_check for every N in [1, n_max], computed incrementally.
std::vector<IdentityCheck> vsum_identity_sweep(unsigned b, std::uint64_t n_max);

/// sum_{k=0}^{(b-1)J} partial_sum_exact(s_b, k, b^J - 1) against H_{b^J - 1}.
IdentityCheck class_partition_check(unsigned b, unsigned J);

/// C(j+k-1, k) / b^(j-1): count bound times largest term for the block
/// b^(j-1) <= n < b^j of the class s_b(n) = k.
Rational tail_count_bound(unsigned b, unsigned k, unsigned j);

/// Exact sum of 1/n over the class s_b(n) = k restricted to b^(j-1) <= n < b^j.
Rational block_sum_exact(unsigned b, unsigned k, unsigned j);

}  // namespace kempner::oracle
