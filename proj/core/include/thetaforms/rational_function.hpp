#pragma once

// Univariate rational functions in p over Q, used to check degree-3 modular
// equations through the parametrization
//   alpha = p (2+p)^3 / (1+2p)^3,  beta = p^3 (2+p) / (1+2p),  m = 1 + 2p.

#include <string>
#include <vector>

#include "thetaforms/series.hpp"

namespace thetaforms {

// Dense polynomial, coefficient of p^i at index i, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly variable();  // p

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& leading() const { return c_.back(); }
  std::string to_string() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Monic greatest common divisor (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);

class RationalFunction {
 public:
  RationalFunction() : num_(Poly()), den_(Poly::constant(1)) {}
  RationalFunction(Poly num, Poly den);
  static RationalFunction constant(const Rational& c);
  static RationalFunction variable();

  // Reduced; integer coefficients with content 1 in the denominator, whose
  // leading coefficient is positive.
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::string to_string() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  Poly num_, den_;
};

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
RationalFunction pow(const RationalFunction& a, int k);

// The parametrization of the degree-3 multiplier and moduli.
RationalFunction param_alpha();
RationalFunction param_beta();
RationalFunction param_m();

// Exact k-th root of r, whose numerator and denominator must factor as a
// constant times powers of p, 2+p and 1+2p with every exponent divisible by
// k and a positive rational k-th power as constant. Throws std::domain_error
// otherwise.
RationalFunction rational_root(const RationalFunction& r, int k);

}  // namespace thetaforms
