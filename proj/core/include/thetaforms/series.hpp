#pragma once

// Truncated formal power series in q with exact integer coefficients.
//
// A Series stores the coefficients of q^0 .. q^(N-1); N is the truncation.
// Binary operations combine operands at the smaller of the two truncations,
// never padding with zeros, so an unknown coefficient is never treated as 0.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace thetaforms {

using Integer = mpz_class;
using Rational = mpq_class;

class Series {
 public:
  Series() = default;
  // The zero series with the given truncation.
  explicit Series(std::size_t truncation);
  // Truncation equals coeffs.size().
  explicit Series(std::vector<Integer> coeffs);

  static Series one(std::size_t truncation);
  static Series monomial(std::size_t exponent, const Integer& coeff, std::size_t truncation);
  static Series from_ints(const std::vector<long>& coeffs);

  std::size_t truncation() const { return coeffs_.size(); }
  const Integer& operator[](std::size_t n) const { return coeffs_[n]; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  std::size_t nonzero_count() const;
  bool is_zero() const;
  // Smallest exponent with a nonzero coefficient.
  std::optional<std::size_t> leading_exponent() const;

  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

  // Human-readable rendering, e.g. "1 + 2*q - q^2 + O(q^3)".
  std::string to_string() const;

 private:
  std::vector<Integer> coeffs_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Series& a, const Integer& c);
Series mul(const Series& a, const Series& b);
Series power(const Series& a, unsigned k);

// Restrict to a smaller truncation (n <= a.truncation()).
Series truncate(const Series& a, std::size_t n);

// Multiply by q^j; exponents pushed past the truncation are dropped.
Series shift(const Series& a, std::size_t j);

// Substitution q -> q^k.
Series compose_power(const Series& a, unsigned k);

// Multiplicative inverse; requires a constant coefficient of +1 or -1.
Series invert(const Series& a);

// Sifting operator: the coefficient of q^k in the result is the coefficient
// of q^(t*k+s) in a. Requires 0 <= s < t.
Series sift(const Series& a, unsigned t, unsigned s);

// Substitution q -> -q.
Series alternate_sign(const Series& a);

struct NonnegativityResult {
  bool nonnegative = true;
  std::optional<std::size_t> witness;  // smallest exponent with a negative coefficient
};

NonnegativityResult is_nonnegative(const Series& a);

// Smallest exponent where a and b differ, compared at their common truncation.
std::optional<std::size_t> first_mismatch(const Series& a, const Series& b);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return negate(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

}  // namespace thetaforms
