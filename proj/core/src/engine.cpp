#include "kempner/engine.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kempner/parallel.hpp"
#include "kempner/qw.hpp"

namespace kempner::engine {

namespace {

constexpr mpfr_prec_t kGuardBits = 16;
constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 15;
// Below this n the expansion of e_w(n) in 1/n is not used.
constexpr std::uint64_t kSeriesThreshold = std::uint64_t{1} << 10;
// Largest N for which n(2n+1) fits in 64 bits.
constexpr std::uint64_t kMaxBase2Limit = std::uint64_t{1} << 31;

/// Running sum with separate downward/upward accumulators.
class DirectedSum {
 public:
  explicit DirectedSum(mpfr_prec_t precision)
      : lo_(precision), hi_(precision), q_(precision), one_(1, 2) {}

  void add_reciprocal(std::uint64_t d) {
    const int inexact = mpfr_div_ui(q_.get(), one_.get(), static_cast<unsigned long>(d), MPFR_RNDD);
    mpfr_add(lo_.get(), lo_.get(), q_.get(), MPFR_RNDD);
    if (inexact != 0) mpfr_nextabove(q_.get());
    mpfr_add(hi_.get(), hi_.get(), q_.get(), MPFR_RNDU);
  }

  void add(const Enclosure& x) {
    mpfr_add(lo_.get(), lo_.get(), x.lo().get(), MPFR_RNDD);
    mpfr_add(hi_.get(), hi_.get(), x.hi().get(), MPFR_RNDU);
  }

  Enclosure result() const { return Enclosure(lo_, hi_); }

 private:
  Float lo_;
  Float hi_;
  Float q_;
  Float one_;
};

Enclosure finish(const Enclosure& x, mpfr_prec_t precision) { return x.rounded(precision); }

SeriesResult make_result(const StatisticSpec& spec, unsigned k, std::uint64_t N, const Enclosure& value,
                         Rational tail, mpfr_prec_t precision) {
  Enclosure limit = limit_value(spec, precision);
  Enclosure gap = finish(value - limit, precision);
  return SeriesResult{spec, k, N, value, std::move(tail), std::move(limit), std::move(gap)};
}

/// e_w(n) = sum_{m>=2} g_m n^-m evaluated by interval Horner for n in one
/// binary length class [2^(beta-1), 2^beta), with a rigorous truncation bound.
struct SeriesPlan {
  std::vector<Enclosure> coefficients;  // g_2 .. g_M
  Enclosure truncation;                 // [-R, R]
};

/// Shared, read-only description of e_w: the expression and one series
/// plan per bit length.
struct TermPlans {
  TermPlans(const Word& w, mpfr_prec_t working)
      : expr(qw::build(w)), working(working), r(static_cast<unsigned>(w.size())), plans(65) {
    const auto terms = expr.terms().size();
    const long log_terms = static_cast<long>(std::bit_width(terms - 1));
    for (unsigned beta = 11; beta <= 64; ++beta) {
      const long need = static_cast<long>(working) + 2L * beta + 8 + r + log_terms + 2;
      const long order = std::max<long>(2, (need + (beta - 2)) / (beta - 1) - 1);
      SeriesPlan plan;
      for (const auto& g : qw::series_coefficients(expr, static_cast<unsigned>(order))) {
        plan.coefficients.push_back(Enclosure::of(g, working));
      }
      // |tail| <= 2^r T n^-(M+1) / ((M+1)(1 - 1/n)) <= 2^(r+1) T / ((M+1) 2^((beta-1)(M+1)))
      Rational bound(power(2, r + 1) * Integer(static_cast<unsigned long>(terms)),
                     Integer(order + 1) * power(2, static_cast<std::uint64_t>((beta - 1) * (order + 1))));
      bound.canonicalize();
      plan.truncation = Enclosure::between(-bound, bound, working);
      plans[beta] = std::move(plan);
    }
  }

  qw::QwExpression expr;
  mpfr_prec_t working;
  unsigned r;
  std::vector<SeriesPlan> plans;
};

/// Per-task evaluator of e_w(n) with its own scratch registers.
class AcceleratedTerm {
 public:
  explicit AcceleratedTerm(const TermPlans& plans)
      : plans_(plans),
        y_lo_(plans.working),
        y_hi_(plans.working),
        p_lo_(plans.working),
        p_hi_(plans.working),
        t_(plans.working) {}

  void add_to(DirectedSum& sum, std::uint64_t n) {
    const mpfr_prec_t working = plans_.working;
    if (n < kSeriesThreshold) {
      const auto extra = working + 2 * static_cast<mpfr_prec_t>(std::bit_width(n)) + 8;
      Enclosure value = qw::evaluate(plans_.expr, n, extra);
      value *= Enclosure::exact(1L << plans_.r, extra);
      value += Enclosure::reciprocal(n, extra);
      sum.add(value);
      return;
    }
    const auto& plan = plans_.plans[std::bit_width(n)];
    mpfr_set_ui(y_lo_.get(), 1, MPFR_RNDN);
    const int inexact = mpfr_div_ui(y_lo_.get(), y_lo_.get(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_set(y_hi_.get(), y_lo_.get(), MPFR_RNDN);
    if (inexact != 0) mpfr_nextabove(y_hi_.get());

    const auto& g = plan.coefficients;
    mpfr_set(p_lo_.get(), g.back().lo().get(), MPFR_RNDD);
    mpfr_set(p_hi_.get(), g.back().hi().get(), MPFR_RNDU);
    for (std::size_t i = g.size() - 1; i-- > 0;) {
      multiply_by_y();
      mpfr_add(p_lo_.get(), p_lo_.get(), g[i].lo().get(), MPFR_RNDD);
      mpfr_add(p_hi_.get(), p_hi_.get(), g[i].hi().get(), MPFR_RNDU);
    }
    multiply_by_y();
    multiply_by_y();
    mpfr_add(p_lo_.get(), p_lo_.get(), plan.truncation.lo().get(), MPFR_RNDD);
    mpfr_add(p_hi_.get(), p_hi_.get(), plan.truncation.hi().get(), MPFR_RNDU);
    sum.add(Enclosure(p_lo_, p_hi_));
  }

 private:
  // [p_lo, p_hi] <- [p_lo, p_hi] * [y_lo, y_hi] for 0 < y_lo <= y_hi.
  void multiply_by_y() {
    mpfr_mul(t_.get(), p_lo_.get(), p_lo_.sign() >= 0 ? y_lo_.get() : y_hi_.get(), MPFR_RNDD);
    mpfr_mul(p_hi_.get(), p_hi_.get(), p_hi_.sign() >= 0 ? y_hi_.get() : y_lo_.get(), MPFR_RNDU);
    mpfr_swap(t_.get(), p_lo_.get());
  }

  const TermPlans& plans_;
  Float y_lo_;
  Float y_hi_;
  Float p_lo_;
  Float p_hi_;
  Float t_;
};

}  // namespace

Enclosure limit_value(const StatisticSpec& spec, mpfr_prec_t precision) {
  const mpfr_prec_t working = precision + kGuardBits;
  if (spec.is_digit_sum()) {
    const unsigned b = spec.base();
    Enclosure value = Enclosure::log_of(Integer(b), working);
    value *= Enclosure::exact(2, working);
    value /= Enclosure::exact(static_cast<long>(b) - 1, working);
    return finish(value, precision);
  }
  const auto r = spec.word().size();
  Enclosure value = Enclosure::log2(working);
  value *= Enclosure::of(Rational(power(2, r)), working);
  return finish(value, precision);
}

SeriesResult a_k_base2(unsigned k, std::uint64_t N, const SumOptions& options) {
  if (k < 1) {
    throw std::invalid_argument("a_k_base2: k must be >= 1");
  }
  if (N < 1) {
    throw std::domain_error("a_k_base2: N must be >= 1");
  }
  if (N > kMaxBase2Limit) {
    throw std::domain_error("a_k_base2: N larger than 2^31 is not supported");
  }
  const mpfr_prec_t working = options.precision + kGuardBits;
  const auto spec = StatisticSpec::digit_sum(2);

  Enclosure value = Enclosure::exact(2, working);
  Rational tail;
  if (k >= 2) {
    const parallel::IndexBlocks blocks{1, N, kBlockSize};
    auto parts = parallel::run_tasks(blocks.count(), options.threads, [&](std::size_t i) {
      DirectedSum sum(working);
      for (std::uint64_t n = blocks.block_first(i), last = blocks.block_last(i); n <= last; ++n) {
        if (static_cast<unsigned>(std::popcount(n)) <= k - 1) {
          sum.add_reciprocal(n * (2 * n + 1));
        }
      }
      return sum.result();
    });
    value -= parallel::ordered_sum(parts, working);
    // sum_{n>N} 1/(n(2n+1)) < sum_{n>N} [1/(n-1/4) - 1/(n+3/4)] / 2 = 2/(4N+3)
    tail = Rational(2, 1) / (Rational(4) * to_rational(N) + 3);
    value.add_interval(-tail, Rational(0));
  }
  return make_result(spec, k, N, finish(value, options.precision), tail, options.precision);
}

SeriesResult u_k_base_b(unsigned b, unsigned k, std::uint64_t N, const SumOptions& options) {
  if (b < 2) {
    throw std::invalid_argument("u_k_base_b: base must be >= 2");
  }
  if (k < 1) {
    throw std::invalid_argument("u_k_base_b: k must be >= 1");
  }
  unsigned J = 0;
  std::uint64_t top = 1;
  while (top - 1 < N) {
    if (top > UINT64_MAX / b) break;
    top *= b;
    ++J;
  }
  if (J == 0 || top - 1 != N) {
    throw std::invalid_argument("u_k_base_b: N must be of the form b^J - 1");
  }
  const Rational rho(Rational(to_rational(J + 1 + k)) / (Rational(J + 1) * b));
  if (rho >= 1) {
    throw std::domain_error("u_k_base_b: J = " + std::to_string(J) + " is too small for k = " +
                            std::to_string(k) + " (tail ratio (J+1+k)/((J+1)b) must be < 1)");
  }
  const mpfr_prec_t working = options.precision + kGuardBits;

  // Fixed task list: every prefix of `head` leading digits.
  unsigned head = 0;
  std::uint64_t tasks = 1;
  while (head < J && tasks < 256) {
    tasks *= b;
    ++head;
  }
  auto parts = parallel::run_tasks(tasks, options.threads, [&](std::size_t i) {
    std::vector<std::uint8_t> prefix(head);
    std::uint64_t rest = i;
    for (unsigned d = head; d-- > 0;) {
      prefix[d] = static_cast<std::uint8_t>(rest % b);
      rest /= b;
    }
    DirectedSum sum(working);
    digitstat::for_each_digit_sum_with_prefix(b, k, J, prefix,
                                              [&](std::uint64_t n) { sum.add_reciprocal(n); });
    return sum.result();
  });
  Enclosure value = parallel::ordered_sum(parts, working);

  // Block j (b^(j-1) <= n < b^j) contributes at most C(j+k-1,k)/b^(j-1);
  // consecutive bounds shrink by at most rho from j = J+1 on.
  Rational first(binomial(J + k, k), power(b, J));
  first.canonicalize();
  const Rational tail = first / (Rational(1) - rho);
  value.add_interval(Rational(0), tail);
  return make_result(StatisticSpec::digit_sum(b), k, N, finish(value, options.precision), tail,
                     options.precision);
}

SeriesResult d_k_accelerated(const Word& w, unsigned k, std::uint64_t N, const SumOptions& options) {
  if (N < 1) {
    throw std::domain_error("d_k_accelerated: N must be >= 1");
  }
  if (k == 0 && w.is_all_zero() && w.size() >= 2) {
    throw std::domain_error("d_k_accelerated: the log b_w identity fails for w = 0^l (l >= 2), k = 0");
  }
  const mpfr_prec_t working = options.precision + kGuardBits;
  const auto spec = StatisticSpec::block_count(w);
  const auto r = static_cast<unsigned>(w.size());

  const digitstat::WindowCounter counter(w);
  const TermPlans plans(w, working);
  const parallel::IndexBlocks blocks{1, N, kBlockSize};
  auto parts = parallel::run_tasks(blocks.count(), options.threads, [&](std::size_t i) {
    AcceleratedTerm term(plans);
    DirectedSum sum(working);
    for (std::uint64_t n = blocks.block_first(i), last = blocks.block_last(i); n <= last; ++n) {
      if (counter.count(n) == k) term.add_to(sum, n);
    }
    return sum.result();
  });

  const qw::QwExpression& expr = plans.expr;
  const Enclosure scale = Enclosure::of(Rational(power(2, r)), working);
  Enclosure value = scale * Enclosure::log2(working);
  value += parallel::ordered_sum(parts, working);
  if (k == 0) {
    if (auto at_zero = qw::log_at_zero(expr, working)) {
      value += scale * *at_zero;
    }
  }
  const Rational tail = qw::remainder_constant(expr) / to_rational(N);
  value.add_interval(-tail, tail);
  return make_result(spec, k, N, finish(value, options.precision), tail, options.precision);
}

std::vector<SeriesResult> convergence_table(const StatisticSpec& spec, unsigned k_first,
                                            unsigned k_last, std::uint64_t N,
                                            const SumOptions& options) {
  std::vector<SeriesResult> rows;
  if (k_first > k_last) {
    return rows;
  }
  std::uint64_t limit = N;
  if (spec.is_digit_sum() && spec.base() > 2) {
    const unsigned b = spec.base();
    std::uint64_t top = 1;
    while (top <= (N + 1) / b) top *= b;
    limit = top - 1;
    if (limit == 0) {
      throw std::domain_error("convergence_table: N must be at least b - 1");
    }
  }
  for (unsigned k = k_first; k <= k_last; ++k) {
    if (spec.is_digit_sum() && k == 0) {
      const Enclosure zero(options.precision);
      rows.push_back(make_result(spec, 0, limit, zero, Rational(0), options.precision));
    } else if (spec.is_digit_sum() && spec.base() == 2) {
      rows.push_back(a_k_base2(k, limit, options));
    } else if (spec.is_digit_sum()) {
      rows.push_back(u_k_base_b(spec.base(), k, limit, options));
    } else {
      rows.push_back(d_k_accelerated(spec.word(), k, limit, options));
    }
    if (k == UINT32_MAX) break;
  }
  return rows;
}

}  // namespace kempner::engine
