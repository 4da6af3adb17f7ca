#pragma once

// Small exact integer helpers shared by the forms, genus and prover modules.

#include <cstdint>
#include <utility>
#include <vector>

namespace thetaforms {

using i64 = std::int64_t;
using i128 = __int128;

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

// Floor of the square root of a non-negative integer.
i64 isqrt(i128 n);
bool is_square(i128 n);

// floor(a / b) and ceil(a / b) for b > 0.
i64 floor_div(i128 a, i128 b);
i64 ceil_div(i128 a, i128 b);

// Euclidean residue in [0, m).
i64 mod(i64 a, i64 m);

// Jacobi symbol (a|n) for odd n >= 1; 0 when gcd(a, n) > 1.
int jacobi(i64 a, i64 n);

// Exponent of p in n (n != 0).
int valuation(i64 n, i64 p);

// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);

bool is_squarefree(i64 n);
i64 euler_phi(i64 n);

}  // namespace thetaforms
