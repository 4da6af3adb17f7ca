#include "thetaforms/rational_function.hpp"

#include <array>
#include <stdexcept>

#include <fmt/format.h>

namespace thetaforms {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
Poly Poly::variable() { return Poly(std::vector<Rational>{0, 1}); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (sgn(c_[i]) == 0) continue;
    Rational a = abs(c_[i]);
    std::string sign = sgn(c_[i]) < 0 ? "-" : (out.empty() ? "" : "+");
    if (!out.empty()) sign = " " + sign + " ";
    std::string mono = i == 0 ? "" : (i == 1 ? "p" : fmt::format("p^{}", i));
    std::string coef = (a == 1 && i > 0) ? "" : a.get_str() + (i > 0 ? "*" : "");
    out += sign + coef + mono;
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) c[i] += a.coefficients()[i];
  for (std::size_t i = 0; i < b.coefficients().size(); ++i) c[i] += b.coefficients()[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) c[i] += a.coefficients()[i];
  for (std::size_t i = 0; i < b.coefficients().size(); ++i) c[i] -= b.coefficients()[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  std::vector<Rational> c(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const auto& d = b.coefficients();
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> q(r.size() - d.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational f = r[k + d.size() - 1] / d.back();
    q[k] = f;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= f * d[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  const Rational lead = x.leading();
  std::vector<Rational> c = x.coefficients();
  for (auto& v : c) v /= lead;
  return Poly(std::move(c));
}

namespace {

Poly scaled(const Poly& p, const Rational& s) {
  std::vector<Rational> c = p.coefficients();
  for (auto& v : c) v *= s;
  return Poly(std::move(c));
}

// lcm of denominators over gcd of numerators of the coefficients of a and b,
// so that multiplying by it gives coprime integer coefficients overall.
Rational clearing_factor(const Poly& p) {
  Integer l = 1, g = 0;
  for (const auto& v : p.coefficients()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (g == 0) g = 1;
  return Rational(l, g);
}

}  // namespace

RationalFunction::RationalFunction(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1);
    return;
  }
  const Poly g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  Rational s = clearing_factor(den);
  if (sgn(den.leading()) < 0) s = -s;
  num_ = scaled(num, s);
  den_ = scaled(den, s);
}

RationalFunction RationalFunction::constant(const Rational& c) { return {Poly::constant(c), Poly::constant(1)}; }
RationalFunction RationalFunction::variable() { return {Poly::variable(), Poly::constant(1)}; }

std::string RationalFunction::to_string() const {
  if (den_ == Poly::constant(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.numerator() * b.denominator() + b.numerator() * a.denominator(), a.denominator() * b.denominator()};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.numerator() * b.denominator() - b.numerator() * a.denominator(), a.denominator() * b.denominator()};
}
RationalFunction operator-(const RationalFunction& a) { return {Poly() - a.numerator(), a.denominator()}; }
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.numerator() * b.numerator(), a.denominator() * b.denominator()};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return {a.numerator() * b.denominator(), a.denominator() * b.numerator()};
}

RationalFunction pow(const RationalFunction& a, int k) {
  RationalFunction base = k < 0 ? RationalFunction::constant(1) / a : a;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  RationalFunction out = RationalFunction::constant(1);
  while (e > 0) {
    if (e & 1u) out = out * base;
    base = base * base;
    e >>= 1u;
  }
  return out;
}

namespace {

Poly lin(long c0, long c1) { return Poly(std::vector<Rational>{c0, c1}); }

const std::array<Poly, 3>& span_factors() {
  static const std::array<Poly, 3> f = {lin(0, 1), lin(2, 1), lin(1, 2)};
  return f;
}

// Write x as c * prod f_i^e_i over the span factors.
std::array<int, 3> factor_in_span(Poly x, Rational& c, const std::string& what) {
  std::array<int, 3> e{0, 0, 0};
  const auto& fs = span_factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    while (x.degree() >= 1) {
      auto [q, r] = divmod(x, fs[i]);
      if (!r.is_zero()) break;
      x = std::move(q);
      ++e[i];
    }
  }
  if (x.degree() != 0)
    throw std::domain_error("rational_root: " + what + " has a factor outside the span of p, 2+p, 1+2p");
  c = x.leading();
  return e;
}

Integer exact_root(const Integer& n, int k, const std::string& what) {
  Integer r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)) == 0)
    throw std::domain_error("rational_root: constant " + what + " is not a perfect power");
  return r;
}

}  // namespace

RationalFunction rational_root(const RationalFunction& r, int k) {
  if (k < 1) throw std::invalid_argument("rational_root: k must be positive");
  if (r.is_zero()) return r;
  Rational cn, cd;
  auto en = factor_in_span(r.numerator(), cn, "numerator");
  auto ed = factor_in_span(r.denominator(), cd, "denominator");
  Rational c = cn / cd;
  if (sgn(c) < 0) throw std::domain_error("rational_root: negative constant");
  const Integer rn = exact_root(c.get_num(), k, c.get_str());
  const Integer rd = exact_root(c.get_den(), k, c.get_str());
  RationalFunction out = RationalFunction::constant(Rational(rn, rd));
  const auto& fs = span_factors();
  for (std::size_t i = 0; i < 3; ++i) {
    const int e = en[i] - ed[i];
    if (e % k != 0)
      throw std::domain_error(fmt::format("rational_root: exponent {} of ({}) is not divisible by {}", e,
                                          fs[i].to_string(), k));
    out = out * pow(RationalFunction(fs[i], Poly::constant(1)), e / k);
  }
  return out;
}

RationalFunction param_alpha() {
  const RationalFunction p = RationalFunction::variable();
  const RationalFunction two = RationalFunction::constant(2), one = RationalFunction::constant(1);
  return p * pow(two + p, 3) / pow(one + two * p, 3);
}

RationalFunction param_beta() {
  const RationalFunction p = RationalFunction::variable();
  const RationalFunction two = RationalFunction::constant(2), one = RationalFunction::constant(1);
  return pow(p, 3) * (two + p) / (one + two * p);
}

RationalFunction param_m() {
  return RationalFunction::constant(1) + RationalFunction::constant(2) * RationalFunction::variable();
}

}  // namespace thetaforms
