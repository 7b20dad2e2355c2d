#include "kempner/qw.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kempner::qw {

namespace {

// Guard bits carried through sums of logarithms before the final rounding.
constexpr mpfr_prec_t kGuardBits = 24;

using Bits = std::string;  // binary word as '0'/'1' characters; may be empty

std::uint64_t value_of(const Bits& t) {
  std::uint64_t v = 0;
  for (char c : t) v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  return v;
}

char flip(char c) { return c == '0' ? '1' : '0'; }

bool suffix_of(const Bits& z, const Bits& w) {
  return z.size() <= w.size() && w.compare(w.size() - z.size(), z.size(), z) == 0;
}

struct Expander {
  const Bits& w;
  std::vector<LogAffineTerm>& out;

  void expand(const Bits& z, const Bits& t, int sign) {
    const auto r = z.size();
    if (r == 0) {
      const auto l = static_cast<unsigned>(t.size());
      const auto c = value_of(t);
      out.push_back({sign, l, c});
      out.push_back({-sign, l, c + 1});
      return;
    }
    if (!suffix_of(z, w)) {
      expand(z.substr(0, r - 1), z.substr(r - 1) + t, sign);
      return;
    }
    if (r == 1) {
      expand(Bits{}, t, sign);
      expand(Bits{}, Bits(1, flip(z[0])) + t, -sign);
      return;
    }
    expand(z.substr(1), t, sign);
    Bits head = z.substr(0, r - 1);
    head[0] = flip(head[0]);
    expand(head, z.substr(r - 1) + t, -sign);
  }
};

Integer affine_value(const LogAffineTerm& term, std::uint64_t n) {
  Integer v = to_integer(n);
  v <<= term.scale_exponent;
  v += to_integer(term.offset);
  return v;
}

Rational scaled_offset(const LogAffineTerm& term) {
  Rational q(to_integer(term.offset), power(2, term.scale_exponent));
  q.canonicalize();
  return q;
}

std::string affine_text(const LogAffineTerm& term) {
  std::ostringstream os;
  const std::uint64_t scale = std::uint64_t{1} << term.scale_exponent;
  os << scale << "n";
  if (term.offset != 0) os << "+" << term.offset;
  return os.str();
}

}  // namespace

QwExpression::QwExpression(Word word, std::vector<LogAffineTerm> terms)
    : word_(std::move(word)), terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(), [](const LogAffineTerm& a, const LogAffineTerm& b) {
    return std::tie(a.scale_exponent, a.offset, a.sign) < std::tie(b.scale_exponent, b.offset, b.sign);
  });
}

QwExpression QwExpression::negated() const {
  std::vector<LogAffineTerm> flipped = terms_;
  for (auto& t : flipped) t.sign = -t.sign;
  return QwExpression(word_, std::move(flipped));
}

std::string QwExpression::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << ' ';
    first = false;
    os << (t.sign > 0 ? '+' : '-') << "log(" << affine_text(t) << ')';
  }
  return os.str();
}

std::string QwExpression::rational_function() const {
  std::string num;
  std::string den;
  for (const auto& t : terms_) {
    (t.sign > 0 ? num : den) += "(" + affine_text(t) + ")";
  }
  if (num.empty()) num = "1";
  if (den.empty()) den = "1";
  return "(" + num + ")/(" + den + ")";
}

QwExpression build(const Word& w) {
  if (w.empty() || w.base() != 2) {
    throw std::invalid_argument("qw::build: need a nonempty binary word");
  }
  if (w.size() > 62) {
    throw std::invalid_argument("qw::build: word too long");
  }
  const Bits word = w.str();
  std::vector<LogAffineTerm> terms;
  Expander{word, terms}.expand(word.substr(0, word.size() - 1), word.substr(word.size() - 1), 1);
  return QwExpression(w, std::move(terms));
}

AsymptoticCoefficients asymptotic_coefficients(const QwExpression& e) {
  AsymptoticCoefficients out;
  for (const auto& t : e.terms()) {
    out.sign_sum += t.sign;
    out.scale_sum += t.sign * static_cast<long>(t.scale_exponent);
    if (t.sign > 0) {
      out.offset_sum += scaled_offset(t);
    } else {
      out.offset_sum -= scaled_offset(t);
    }
  }
  return out;
}

Enclosure evaluate(const QwExpression& e, std::uint64_t n, mpfr_prec_t precision) {
  const mpfr_prec_t working = precision + kGuardBits;
  Enclosure sum(working);
  for (const auto& t : e.terms()) {
    const Integer arg = affine_value(t, n);
    if (arg == 0) {
      throw std::domain_error("qw::evaluate: log(0) at n = 0");
    }
    const Enclosure term = Enclosure::log_of(arg, working);
    if (t.sign > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum.rounded(precision);
}

Rational remainder_constant(const QwExpression& e) {
  Rational total;
  for (const auto& t : e.terms()) {
    const Rational x = scaled_offset(t);
    total += x * x;
  }
  const auto r = e.word().size();
  Rational scale(power(2, r - 1));
  return scale * total;
}

std::vector<Rational> series_coefficients(const QwExpression& e, unsigned max_order) {
  std::vector<Rational> out;
  if (max_order < 2) {
    return out;
  }
  const Rational two_r(power(2, e.word().size()));
  std::vector<Rational> offsets;
  std::vector<int> signs;
  for (const auto& t : e.terms()) {
    offsets.push_back(scaled_offset(t));
    signs.push_back(t.sign);
  }
  std::vector<Rational> powers = offsets;  // x_i^m, starting at m = 1
  for (unsigned m = 2; m <= max_order; ++m) {
    Rational moment;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      powers[i] *= offsets[i];
      if (signs[i] > 0) {
        moment += powers[i];
      } else {
        moment -= powers[i];
      }
    }
    Rational g = two_r * moment / Rational(m);
    if (m % 2 == 0) g = -g;
    out.push_back(g);
  }
  return out;
}

std::optional<Enclosure> log_at_zero(const QwExpression& e, mpfr_prec_t precision) {
  for (const auto& t : e.terms()) {
    if (t.offset == 0) return std::nullopt;
  }
  return evaluate(e, 0, precision);
}

Enclosure identity_partial_sum(const Word& w, unsigned k, std::uint64_t N, mpfr_prec_t precision) {
  const QwExpression e = build(w);
  const mpfr_prec_t working = precision + kGuardBits;
  Enclosure sum(working);
  digitstat::for_each_in_class(StatisticSpec::block_count(w), k, N,
                               [&](std::uint64_t n) { sum += evaluate(e, n, working); });
  return sum.rounded(precision);
}

}  // namespace kempner::qw
