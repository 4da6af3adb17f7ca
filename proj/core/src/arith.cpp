#include "thetaforms/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace thetaforms {

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd(a, b)) * b;
}

i64 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  if (n < 2) return static_cast<i64>(n);
  // Newton iteration from an overestimate; converges monotonically downwards.
  i128 x = n;
  i128 y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return static_cast<i64>(x);
}

bool is_square(i128 n) {
  if (n < 0) return false;
  i128 r = isqrt(n);
  return r * r == n;
}

i64 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<i64>(q);
}

i64 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi symbol needs odd positive modulus");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int valuation(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  if (n < 0) n = -n;
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(i64 n) {
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

i64 euler_phi(i64 n) {
  i64 result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

}  // namespace thetaforms
