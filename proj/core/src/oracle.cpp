#include "kempner/oracle.hpp"

#include <numeric>
#include <stdexcept>

namespace kempner::oracle {

namespace {

std::uint64_t checked_power(unsigned base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (out > UINT64_MAX / base) {
      throw std::overflow_error("oracle: b^J does not fit in 64 bits");
    }
    out *= base;
  }
  return out;
}

std::vector<std::uint64_t> digit_sum_class(unsigned b, unsigned k, std::uint64_t limit) {
  return enumerate_class({StatisticSpec::digit_sum(b), k, limit});
}

}  // namespace

Rational harmonic(std::uint64_t n) {
  if (n == 0) {
    throw std::domain_error("harmonic: n must be >= 1");
  }
  std::vector<std::uint64_t> all(n);
  std::iota(all.begin(), all.end(), std::uint64_t{1});
  return reciprocal_sum(all);
}

std::vector<std::uint64_t> enumerate_class(const ClassQuery& q) {
  if (q.limit == 0) {
    throw std::invalid_argument("enumerate_class: N must be >= 1");
  }
  std::vector<std::uint64_t> out;
  digitstat::for_each_in_class(q.spec, q.k, q.limit, [&](std::uint64_t n) { out.push_back(n); });
  return out;
}

Rational partial_sum_exact(const ClassQuery& q) { return reciprocal_sum(enumerate_class(q)); }

IdentityCheck split_identity_check(unsigned b, unsigned k, unsigned J) {
  if (b < 2 || k < 1) {
    throw std::invalid_argument("split_identity_check: need b >= 2 and k >= 1");
  }
  const std::uint64_t low = checked_power(b, J);
  const std::uint64_t high = checked_power(b, J + 1);

  IdentityCheck out;
  out.lhs = reciprocal_sum(digit_sum_class(b, k, high - 1));

  Rational rhs = reciprocal_sum(digit_sum_class(b, k, low - 1)) / Rational(b);
  for (unsigned j = 1; j <= b - 1 && j <= k; ++j) {
    std::vector<std::uint64_t> shifted;
    if (k == j) {
      shifted.push_back(j);  // n = 0 has digit sum 0
    } else {
      for (auto n : digit_sum_class(b, k - j, low - 1)) {
        shifted.push_back(static_cast<std::uint64_t>(b) * n + j);
      }
    }
    rhs += reciprocal_sum(shifted);
  }
  out.rhs = rhs;
  out.holds = out.lhs == out.rhs;
  return out;
}

std::vector<IdentityCheck> vsum_identity_sweep(unsigned b, std::uint64_t n_max) {
  if (b < 2 || n_max < 1) {
    throw std::invalid_argument("vsum_identity_sweep: need b >= 2 and N >= 1");
  }
  std::vector<IdentityCheck> out;
  out.reserve(n_max);

  const Rational h_head = harmonic(b - 1);
  Rational lhs;
  Rational h_n;              // H_N
  Rational h_big = h_head;   // H_{bN+b-1}, starts at H_{b-1}
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Rational v = -Rational(1) / to_rational(n);
    for (unsigned j = 0; j < b; ++j) {
      v += Rational(1) / to_rational(b * n + j);
    }
    lhs += v;

    h_n += Rational(1) / to_rational(n);
    for (unsigned j = 0; j < b; ++j) {
      h_big += Rational(1) / to_rational(b * n + j);
    }
    IdentityCheck check;
    check.lhs = lhs;
    check.rhs = h_big - h_head - h_n;
    check.holds = check.lhs == check.rhs;
    out.push_back(std::move(check));
  }
  return out;
}

IdentityCheck vsum_identity_check(unsigned b, std::uint64_t N) {
  return vsum_identity_sweep(b, N).back();
}

IdentityCheck class_partition_check(unsigned b, unsigned J) {
  if (b < 2 || J < 1) {
    throw std::invalid_argument("class_partition_check: need b >= 2 and J >= 1");
  }
  const std::uint64_t top = checked_power(b, J) - 1;
  IdentityCheck out;
  for (unsigned k = 0; k <= (b - 1) * J; ++k) {
    out.lhs += partial_sum_exact({StatisticSpec::digit_sum(b), k, top});
  }
  out.rhs = harmonic(top);
  out.holds = out.lhs == out.rhs;
  return out;
}

Rational tail_count_bound(unsigned b, unsigned k, unsigned j) {
  if (b < 2 || j < 1) {
    throw std::invalid_argument("tail_count_bound: need b >= 2 and j >= 1");
  }
  Rational out(binomial(j + k - 1, k), power(b, j - 1));
  out.canonicalize();
  return out;
}

Rational block_sum_exact(unsigned b, unsigned k, unsigned j) {
  if (b < 2 || j < 1) {
    throw std::invalid_argument("block_sum_exact: need b >= 2 and j >= 1");
  }
  const std::uint64_t first = checked_power(b, j - 1);
  const std::uint64_t last = checked_power(b, j) - 1;
  std::vector<std::uint64_t> members;
  for (auto n : digit_sum_class(b, k, last)) {
    if (n >= first) members.push_back(n);
  }
  return reciprocal_sum(members);
}

}  // namespace kempner::oracle
