#pragma once

// Naive reference computations. Nothing here calls into the library except to
// convert results for comparison, so a bug in the library cannot leak in.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "thetaforms/forms.hpp"
#include "thetaforms/series.hpp"

namespace oracle {

using ll = long long;
using Coeffs = std::vector<ll>;

// f(sx q^x, sy q^y) by summing lattice terms over a generous window.
inline Coeffs theta(ll x, ll y, std::size_t n, int sx = 1, int sy = 1) {
  Coeffs c(n, 0);
  for (ll k = -2000; k <= 2000; ++k) {
    const ll a = k * (k - 1) / 2, b = k * (k + 1) / 2;
    const ll e = x * a + y * b;
    if (e < 0 || e >= static_cast<ll>(n)) continue;
    const ll sign = ((sx == -1 && (a & 1)) ? -1 : 1) * ((sy == -1 && (b & 1)) ? -1 : 1);
    c[e] += sign;
  }
  return c;
}

// phi(q) = sum over squares, psi(q) = sum over triangular numbers, directly.
inline Coeffs phi(std::size_t n) {
  Coeffs c(n, 0);
  for (ll x = -100000; x <= 100000; ++x)
    if (x * x < static_cast<ll>(n)) c[x * x] += 1;
  return c;
}

inline Coeffs psi(std::size_t n) {
  Coeffs c(n, 0);
  for (ll x = 0; x * (x + 1) / 2 < static_cast<ll>(n); ++x) c[x * (x + 1) / 2] += 1;
  return c;
}

inline Coeffs product(const Coeffs& a, const Coeffs& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Coeffs c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// prod_{j >= 1} (1 - q^(k j)), multiplying one binomial at a time.
inline Coeffs euler(std::size_t n, ll k = 1) {
  Coeffs c(n, 0);
  c[0] = 1;
  for (ll j = k; j < static_cast<ll>(n); j += k)
    for (ll i = static_cast<ll>(n) - 1; i >= j; --i) c[i] -= c[i - j];
  return c;
}

// Partition numbers by counting with parts 1..n (coin-change recursion).
inline Coeffs partitions(std::size_t n) {
  Coeffs p(n, 0);
  p[0] = 1;
  for (std::size_t part = 1; part < n; ++part)
    for (std::size_t i = part; i < n; ++i) p[i] += p[i - part];
  return p;
}

// Triples with f = m, scanning the box |x_i| <= sqrt(m * cof_ii / disc)
// where cof is the adjugate of the doubled Gram matrix.
inline ll repcount(const thetaforms::TernaryForm& f, ll m) {
  const ll a = f.a, b = f.b, c = f.c, d = f.d, e = f.e, g = f.f;
  const ll det2 = 2 * a * (4 * b * c - d * d) - g * (2 * g * c - d * e) + e * (g * d - 2 * b * e);
  const ll disc = det2 / 2;
  const ll cof[3] = {4 * b * c - d * d, 4 * a * c - e * e, 4 * a * b - g * g};
  ll box[3];
  for (int i = 0; i < 3; ++i) box[i] = static_cast<ll>(std::sqrt(static_cast<double>(m) * cof[i] / disc)) + 1;
  ll count = 0;
  for (ll x = -box[0]; x <= box[0]; ++x)
    for (ll y = -box[1]; y <= box[1]; ++y)
      for (ll z = -box[2]; z <= box[2]; ++z)
        if (a * x * x + b * y * y + c * z * z + d * y * z + e * z * x + g * x * y == m) ++count;
  return count;
}

// Count over all 3x3 matrices with columns among vectors of the right norm.
inline ll aut_count(const thetaforms::TernaryForm& f) {
  const ll gram[3][3] = {{2 * f.a, f.f, f.e}, {f.f, 2 * f.b, f.d}, {f.e, f.d, 2 * f.c}};
  auto norm = [&](const std::array<ll, 3>& v) {
    ll s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += v[i] * gram[i][j] * v[j];
    return s;
  };
  auto inner = [&](const std::array<ll, 3>& u, const std::array<ll, 3>& v) {
    ll s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += u[i] * gram[i][j] * v[j];
    return s;
  };
  std::vector<std::array<ll, 3>> cols[3];
  const ll diag[3] = {f.a, f.b, f.c};
  for (int i = 0; i < 3; ++i) {
    const ll bound = 40;
    for (ll x = -bound; x <= bound; ++x)
      for (ll y = -bound; y <= bound; ++y)
        for (ll z = -bound; z <= bound; ++z) {
          std::array<ll, 3> v{x, y, z};
          if (norm(v) == 2 * diag[i]) cols[i].push_back(v);
        }
  }
  ll count = 0;
  for (const auto& u : cols[0])
    for (const auto& v : cols[1]) {
      if (inner(u, v) != gram[0][1]) continue;
      for (const auto& w : cols[2]) {
        if (inner(u, w) != gram[0][2] || inner(v, w) != gram[1][2]) continue;
        const ll det = u[0] * (v[1] * w[2] - v[2] * w[1]) - v[0] * (u[1] * w[2] - u[2] * w[1]) +
                       w[0] * (u[1] * v[2] - u[2] * v[1]);
        if (det == 1 || det == -1) ++count;
      }
    }
  return count;
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(ll a, ll p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  ll r = 1, base = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

inline thetaforms::Series to_series(const Coeffs& c) {
  std::vector<long> v(c.begin(), c.end());
  return thetaforms::Series::from_ints(v);
}

inline Coeffs to_coeffs(const thetaforms::Series& s) {
  Coeffs c(s.truncation());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s[i].get_si();
  return c;
}

inline thetaforms::Series random_series(std::mt19937& rng, std::size_t n, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<long> v(n);
  for (auto& x : v) x = dist(rng);
  return thetaforms::Series::from_ints(v);
}

}  // namespace oracle
