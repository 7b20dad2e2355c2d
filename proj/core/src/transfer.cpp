#include "kempner/transfer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kempner::transfer {

namespace {

constexpr mpfr_prec_t kRootGuardBits = 32;
constexpr unsigned kMaxIterations = 2000;

struct Complex {
  Float re;
  Float im;

  explicit Complex(mpfr_prec_t p) : re(p), im(p) {}
  Complex(Float r, Float i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Float den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  Float norm() const { return hypot(re, im); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

struct ComplexEnclosure {
  Enclosure re;
  Enclosure im;

  friend ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Enclosure modulus() const { return sqrt(square(re) + square(im)); }
};

ComplexEnclosure point(const Float& re, const Float& im) {
  return {Enclosure(re, re), Enclosure(im, im)};
}

// P(z) and P'(z) by Horner.
std::pair<Complex, Complex> horner(const std::vector<Float>& a, const Complex& z, mpfr_prec_t p) {
  Complex value(a[0], Float(0, p));
  Complex slope(Float(0, p), Float(0, p));
  for (std::size_t k = 1; k < a.size(); ++k) {
    slope = slope * z + value;
    value = value * z;
    value.re += a[k];
  }
  return {value, slope};
}

Float from_double(double x, mpfr_prec_t p) {
  Float f(p);
  mpfr_set_d(f.get(), x, MPFR_RNDN);
  return f;
}

std::vector<Complex> aberth(const Polynomial& poly, mpfr_prec_t p, unsigned& iterations) {
  const std::size_t d = poly.degree();
  std::vector<Float> a;
  for (const auto& c : poly.coefficients()) a.emplace_back(c, p);

  // Start on a circle whose radius is the geometric mean of the root moduli.
  Float rho(1, p);
  if (poly[d] != 0) {
    const Rational ratio = abs(poly[d] / poly[0]);
    rho = Float(ratio, p);
    mpfr_rootn_ui(rho.get(), rho.get(), static_cast<unsigned long>(d), MPFR_RNDN);
  }
  Float pi(p);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  std::vector<Complex> z;
  for (std::size_t j = 0; j < d; ++j) {
    Float angle = pi * Float(2 * static_cast<long>(j), p) / Float(static_cast<long>(d), p) + from_double(0.4, p);
    Float c(p);
    Float s(p);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    z.emplace_back(rho * c, rho * s);
  }

  Float tolerance(1, p);
  mpfr_mul_2si(tolerance.get(), tolerance.get(), -static_cast<long>(p) + 8, MPFR_RNDN);
  const Complex one(Float(1, p), Float(0, p));
  unsigned settled = 0;
  for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
    Float largest_step(0, p);
    for (std::size_t j = 0; j < d; ++j) {
      auto [value, slope] = horner(a, z[j], p);
      if (value.is_zero()) continue;
      if (slope.is_zero()) {
        throw std::runtime_error("find_roots: vanishing derivative at an iterate (repeated root?)");
      }
      const Complex w = value / slope;
      Complex s(Float(0, p), Float(0, p));
      for (std::size_t k = 0; k < d; ++k) {
        if (k != j) s += one / (z[j] - z[k]);
      }
      const Complex step = w / (one - w * s);
      z[j] -= step;
      Float scale = z[j].norm();
      if (scale < Float(1, p)) scale = Float(1, p);
      largest_step = std::max(largest_step, step.norm() / scale);
    }
    if (largest_step <= tolerance) {
      // A couple of extra sweeps square the error once more.
      if (++settled == 2) return z;
    }
  }
  std::ostringstream os;
  os << "find_roots: Aberth iteration did not converge in " << kMaxIterations << " steps for "
     << poly.to_string();
  throw std::runtime_error(os.str());
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw std::invalid_argument("Polynomial: no coefficients");
  }
  if (coefficients_.front() == 0) {
    throw std::invalid_argument("Polynomial: leading coefficient is zero");
  }
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc;
  for (const auto& c : coefficients_) acc = acc * x + c;
  return acc;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  const std::size_t d = degree();
  bool first = true;
  for (std::size_t k = 0; k <= d; ++k) {
    const Rational& c = coefficients_[k];
    if (c == 0) continue;
    const std::size_t power_of_x = d - k;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    if (mag != 1 || power_of_x == 0) os << kempner::to_string(mag);
    if (power_of_x >= 1) os << "X";
    if (power_of_x >= 2) os << "^" << power_of_x;
  }
  return os.str();
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  std::vector<Rational> out(p.degree() + q.degree() + 1);
  for (std::size_t i = 0; i <= p.degree(); ++i) {
    for (std::size_t j = 0; j <= q.degree(); ++j) out[i + j] += p[i] * q[j];
  }
  return Polynomial(std::move(out));
}

Polynomial corollary_polynomial(unsigned b) {
  if (b < 2) {
    throw std::invalid_argument("corollary_polynomial: b must be >= 2");
  }
  std::vector<Rational> c;
  for (unsigned v = b - 1; v >= 1; --v) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Polynomial corollary_expansion(unsigned b) {
  if (b < 2) {
    throw std::invalid_argument("corollary_expansion: b must be >= 2");
  }
  std::vector<Rational> c(b, Rational(1));
  c.front() = -Rational(b - 1);
  return Polynomial(std::move(c));
}

RootReport find_roots(const Polynomial& p, mpfr_prec_t precision) {
  if (p.degree() == 0) {
    throw std::invalid_argument("find_roots: polynomial has degree 0");
  }
  const mpfr_prec_t working = precision + kRootGuardBits;
  RootReport report;
  const std::vector<Complex> z = aberth(p, working, report.iterations);
  const std::size_t d = p.degree();

  std::vector<Enclosure> coefficients;
  for (const auto& c : p.coefficients()) coefficients.push_back(Enclosure::of(c, working));
  const Enclosure lead = Enclosure::of(abs(p[0]), working);

  for (std::size_t j = 0; j < d; ++j) {
    const ComplexEnclosure zj = point(z[j].re, z[j].im);
    ComplexEnclosure value{coefficients[0], Enclosure(working)};
    for (std::size_t k = 1; k <= d; ++k) {
      value = value * zj;
      value.re += coefficients[k];
    }
    Enclosure denominator = lead;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == j) continue;
      const ComplexEnclosure diff{zj.re - Enclosure(z[k].re, z[k].re), zj.im - Enclosure(z[k].im, z[k].im)};
      const Enclosure distance = diff.modulus();
      if (distance.lo().sign() <= 0) {
        throw std::runtime_error("find_roots: root approximations coincide for " + p.to_string());
      }
      denominator *= Enclosure(distance.lo(), distance.lo());
    }
    Enclosure radius = Enclosure::exact(static_cast<long>(d), working);
    const Enclosure residual = value.modulus();
    radius *= Enclosure(residual.hi(), residual.hi());
    radius /= denominator;

    const Enclosure modulus = zj.modulus();
    Float lo(working);
    Float hi(working);
    mpfr_sub(lo.get(), modulus.lo().get(), radius.hi().get(), MPFR_RNDD);
    if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
    mpfr_add(hi.get(), modulus.hi().get(), radius.hi().get(), MPFR_RNDU);
    report.roots.push_back(Root{z[j].re.rounded(precision, Round::nearest),
                                z[j].im.rounded(precision, Round::nearest), radius.hi(),
                                Enclosure(lo, hi).rounded(precision)});
  }

  report.isolated = true;
  for (std::size_t j = 0; j < d && report.isolated; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      const ComplexEnclosure diff{point(z[j].re, z[j].im).re - Enclosure(z[k].re, z[k].re),
                                  point(z[j].re, z[j].im).im - Enclosure(z[k].im, z[k].im)};
      Enclosure reach(report.roots[j].radius, report.roots[j].radius);
      reach += Enclosure(report.roots[k].radius, report.roots[k].radius);
      if (!diff.modulus().certainly_greater(reach)) {
        report.isolated = false;
        break;
      }
    }
  }

  // The union of the disks holds every root, so the largest hi bounds the
  // maximum. The lower bound needs one root per disk.
  Float hi(precision);
  Float lo(precision);
  for (const auto& r : report.roots) {
    if (r.modulus.hi() > hi) hi = r.modulus.hi();
    if (report.isolated && r.modulus.lo() > lo) lo = r.modulus.lo();
  }
  report.max_modulus = Enclosure(lo, hi);
  return report;
}

Enclosure max_root_modulus(const Polynomial& p, mpfr_prec_t precision) {
  return find_roots(p, precision).max_modulus;
}

std::vector<Rational> filter_sequence(const Polynomial& p, std::span<const Rational> u) {
  const std::size_t d = p.degree();
  if (u.size() <= d) {
    throw std::domain_error("filter_sequence: sequence shorter than degree + 1");
  }
  std::vector<Rational> out;
  out.reserve(u.size() - d);
  for (std::size_t n = d; n < u.size(); ++n) {
    Rational acc;
    for (std::size_t k = 0; k <= d; ++k) acc += p[k] * u[n - k];
    out.push_back(acc);
  }
  return out;
}

std::vector<Float> filter_sequence(const Polynomial& p, std::span<const Float> u, mpfr_prec_t precision) {
  const std::size_t d = p.degree();
  if (u.size() <= d) {
    throw std::domain_error("filter_sequence: sequence shorter than degree + 1");
  }
  std::vector<Float> a;
  for (const auto& c : p.coefficients()) a.emplace_back(c, precision);
  std::vector<Float> out;
  out.reserve(u.size() - d);
  for (std::size_t n = d; n < u.size(); ++n) {
    Float acc(0, precision);
    for (std::size_t k = 0; k <= d; ++k) acc += a[k] * u[n - k];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<Float> compose_root_filters(const Polynomial& p, const std::vector<Root>& roots,
                                        std::span<const Float> u, mpfr_prec_t precision) {
  const std::size_t d = p.degree();
  if (u.size() <= d) {
    throw std::domain_error("compose_root_filters: sequence shorter than degree + 1");
  }
  if (roots.size() != d) {
    throw std::invalid_argument("compose_root_filters: need exactly one root per degree");
  }
  std::vector<Complex> v;
  v.reserve(u.size());
  for (const auto& x : u) v.emplace_back(x.rounded(precision, Round::nearest), Float(0, precision));
  for (const auto& root : roots) {
    const Complex z(root.re.rounded(precision, Round::nearest), root.im.rounded(precision, Round::nearest));
    std::vector<Complex> next;
    next.reserve(v.size() - 1);
    for (std::size_t n = 1; n < v.size(); ++n) next.push_back(v[n] - z * v[n - 1]);
    v = std::move(next);
  }
  const Float lead(p[0], precision);
  std::vector<Float> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(lead * x.re);
  return out;
}

DecayProfile DecayProfile::geometric(Rational ratio) {
  if (abs(ratio) >= 1) {
    throw std::invalid_argument("DecayProfile::geometric: ratio must lie in (-1, 1)");
  }
  DecayProfile out;
  out.kind = Kind::geometric;
  out.ratio = std::move(ratio);
  return out;
}

std::string DecayProfile::to_string() const {
  if (kind == Kind::harmonic) return "1/n";
  return "(" + kempner::to_string(ratio) + ")^n";
}

DemoReport corollary_demo(unsigned b, const Rational& ell, const DecayProfile& decay, std::uint64_t n_max,
                          mpfr_prec_t precision) {
  if (b < 3) {
    throw std::invalid_argument("corollary_demo: b must be >= 3");
  }
  if (decay.kind == DecayProfile::Kind::geometric && abs(decay.ratio) >= 1) {
    throw std::invalid_argument("corollary_demo: geometric ratio must lie in (-1, 1)");
  }
  if (n_max < b) {
    throw std::invalid_argument("corollary_demo: n_max must be >= b");
  }
  const Polynomial p = corollary_polynomial(b);
  Rational base_value = Rational(2) * ell / Rational(static_cast<unsigned long>(b) * (b - 1));
  base_value.canonicalize();
  const Float base(base_value, precision);
  const Float ratio(decay.ratio, precision);

  std::vector<Float> u;
  u.reserve(n_max);
  Float power = ratio;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Float term(precision);
    if (decay.kind == DecayProfile::Kind::harmonic) {
      mpfr_set_ui(term.get(), 1, MPFR_RNDN);
      mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    } else {
      term = power;
      power *= ratio;
    }
    u.push_back(base + term);
  }

  DemoReport report;
  report.b = b;
  report.ell = ell;
  report.n_max = n_max;
  report.filtered = filter_sequence(p, u, precision);
  const std::size_t count = report.filtered.size();
  const std::size_t window = std::max<std::size_t>(1, count / 10);
  const std::size_t first = count - window;
  // filtered[i] is the value at n = i + d + 1.
  report.window_first = first + p.degree() + 1;
  const Float target(ell, precision);
  report.max_deviation = Float(0, precision);
  for (std::size_t i = first; i < count; ++i) {
    const Float dev = abs(report.filtered[i] - target);
    if (dev > report.max_deviation) report.max_deviation = dev;
  }
  return report;
}

}  // namespace kempner::transfer
