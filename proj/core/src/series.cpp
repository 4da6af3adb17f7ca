#include "thetaforms/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace thetaforms {

namespace {

std::vector<std::size_t> support(const Series& a) {
  std::vector<std::size_t> idx;
  for (std::size_t n = 0; n < a.truncation(); ++n)
    if (sgn(a[n]) != 0) idx.push_back(n);
  return idx;
}

}  // namespace

Series::Series(std::size_t truncation) : coeffs_(truncation) {}

Series::Series(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {}

Series Series::one(std::size_t truncation) { return monomial(0, 1, truncation); }

Series Series::monomial(std::size_t exponent, const Integer& coeff, std::size_t truncation) {
  Series s(truncation);
  if (exponent < truncation) s.coeffs_[exponent] = coeff;
  return s;
}

Series Series::from_ints(const std::vector<long>& coeffs) {
  std::vector<Integer> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return Series(std::move(c));
}

std::size_t Series::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return sgn(c) != 0; }));
}

bool Series::is_zero() const { return nonzero_count() == 0; }

std::optional<std::size_t> Series::leading_exponent() const {
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (sgn(coeffs_[n]) != 0) return n;
  return std::nullopt;
}

std::string Series::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const Integer& c = coeffs_[n];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (n == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "q";
    if (n > 1) out << "^" << n;
  }
  if (first) out << "0";
  out << " + O(q^" << coeffs_.size() << ")";
  return out.str();
}

Series add(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + b[i];
  return Series(std::move(c));
}

Series sub(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  std::vector<Integer> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] - b[i];
  return Series(std::move(c));
}

Series negate(const Series& a) {
  std::vector<Integer> c(a.truncation());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a[i];
  return Series(std::move(c));
}

Series scale(const Series& a, const Integer& k) {
  std::vector<Integer> c(a.truncation());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * k;
  return Series(std::move(c));
}

Series mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  std::vector<std::size_t> sa = support(a);
  std::vector<std::size_t> sb = support(b);
  const Series* outer = &a;
  const Series* inner = &b;
  if (sb.size() < sa.size()) {
    std::swap(sa, sb);
    std::swap(outer, inner);
  }
  std::vector<Integer> c(n);
  for (std::size_t i : sa) {
    if (i >= n) break;
    const mpz_srcptr x = (*outer)[i].get_mpz_t();
    for (std::size_t j : sb) {
      if (i + j >= n) break;
      mpz_addmul(c[i + j].get_mpz_t(), x, (*inner)[j].get_mpz_t());
    }
  }
  return Series(std::move(c));
}

Series power(const Series& a, unsigned k) {
  Series result = Series::one(a.truncation());
  Series base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Series truncate(const Series& a, std::size_t n) {
  if (n > a.truncation()) throw std::invalid_argument("truncate: cannot extend a series");
  const auto& c = a.coefficients();
  return Series(std::vector<Integer>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

Series shift(const Series& a, std::size_t j) {
  std::vector<Integer> c(a.truncation());
  for (std::size_t i = 0; i + j < c.size(); ++i) c[i + j] = a[i];
  return Series(std::move(c));
}

Series compose_power(const Series& a, unsigned k) {
  if (k == 0) throw std::invalid_argument("compose_power: exponent must be >= 1");
  std::vector<Integer> c(a.truncation());
  for (std::size_t i = 0; i * k < c.size(); ++i) c[i * k] = a[i];
  return Series(std::move(c));
}

Series invert(const Series& a) {
  const std::size_t n = a.truncation();
  if (n == 0) return a;
  if (abs(a[0]) != 1)
    throw std::domain_error("invert: constant coefficient must be +1 or -1, got " + a[0].get_str());
  const Integer a0 = a[0];  // a0 is its own inverse
  std::vector<std::size_t> sa = support(a);
  std::vector<Integer> b(n);
  b[0] = a0;
  Integer acc;
  for (std::size_t m = 1; m < n; ++m) {
    acc = 0;
    for (std::size_t k : sa) {
      if (k == 0) continue;
      if (k > m) break;
      mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), b[m - k].get_mpz_t());
    }
    b[m] = -a0 * acc;
  }
  return Series(std::move(b));
}

Series sift(const Series& a, unsigned t, unsigned s) {
  if (t == 0 || s >= t) throw std::invalid_argument("sift: need 0 <= s < t");
  const std::size_t n = a.truncation();
  if (n <= s) return Series(0);
  const std::size_t out_n = (n - 1 - s) / t + 1;
  std::vector<Integer> c(out_n);
  for (std::size_t k = 0; k < out_n; ++k) c[k] = a[t * k + s];
  return Series(std::move(c));
}

Series alternate_sign(const Series& a) {
  std::vector<Integer> c(a.truncation());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (i % 2 == 0) ? a[i] : Integer(-a[i]);
  return Series(std::move(c));
}

NonnegativityResult is_nonnegative(const Series& a) {
  for (std::size_t i = 0; i < a.truncation(); ++i)
    if (sgn(a[i]) < 0) return {false, i};
  return {};
}

std::optional<std::size_t> first_mismatch(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.truncation(), b.truncation());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  return std::nullopt;
}

}  // namespace thetaforms
