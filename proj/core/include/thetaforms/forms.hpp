#pragma once

// Positive definite integral binary and ternary quadratic forms.
//
// Ternary forms use the sextuple convention
//   (a,b,c,d,e,f) <-> a x^2 + b y^2 + c z^2 + d yz + e zx + f xy,
// and their "doubled Gram matrix" is [[2a f e] [f 2b d] [e d 2c]].

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thetaforms/arith.hpp"
#include "thetaforms/series.hpp"

namespace thetaforms {

using Gram3 = std::array<std::array<i64, 3>, 3>;
using Vec3 = std::array<i64, 3>;

struct TernaryForm {
  i64 a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  i64 value(i64 x, i64 y, i64 z) const {
    return a * x * x + b * y * y + c * z * z + d * y * z + e * z * x + f * x * y;
  }
  i64 value(const Vec3& v) const { return value(v[0], v[1], v[2]); }

  Gram3 gram() const { return {{{2 * a, f, e}, {f, 2 * b, d}, {e, d, 2 * c}}}; }
  bool is_positive_definite() const;

  // "a,b,c,d,e,f"
  std::string to_string() const;
  // "a,b,c,d,e,f", optionally wrapped in parentheses.
  static TernaryForm parse(std::string_view text);
  static TernaryForm from_gram(const Gram3& g);

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
  friend auto operator<=>(const TernaryForm&, const TernaryForm&) = default;
};

struct BinaryForm {
  i64 a = 0, b = 0, c = 0;

  i64 value(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }
  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
  std::string to_string() const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

// Half the determinant of the doubled Gram matrix.
i64 discriminant(const TernaryForm& f);

// B(u, v) = u^T G v for the doubled Gram matrix G, so B(v, v) = 2 f(v).
i64 bilinear(const Gram3& g, const Vec3& u, const Vec3& v);

// Number of integer triples with f(x,y,z) = m.
std::uint64_t repcount(const TernaryForm& f, i64 m);

// counts[m] = repcount(f, m) for 0 <= m <= max_m, in a single enumeration.
std::vector<std::uint64_t> representation_counts(const TernaryForm& f, i64 max_m);
std::vector<std::uint64_t> representation_counts(const BinaryForm& f, i64 max_m);

// All vectors v with f(v) <= bound, in deterministic order.
std::vector<Vec3> short_vectors(const TernaryForm& f, i64 bound);

Series theta_series(const TernaryForm& f, std::size_t truncation);
Series theta_series(const BinaryForm& f, std::size_t truncation);

// |{U in GL_3(Z) : U^T G U = G}|.
std::uint64_t aut_count(const TernaryForm& f);

// True iff some U in GL_3(Z) carries f to g. Discriminants must agree.
bool ternary_equivalent(const TernaryForm& f, const TernaryForm& g);

// One representative per GL_3(Z) class of positive definite forms of
// discriminant disc, sorted by (a,b,c,|d|,|e|,|f|, signs). Each representative
// is the least candidate of its class under that order.
std::vector<TernaryForm> enumerate_ternary_classes(i64 disc);

// Total order used for class representatives.
bool representative_less(const TernaryForm& x, const TernaryForm& y);

// Gauss-reduced representative: |b| <= a <= c, and b >= 0 if |b| == a or a == c.
BinaryForm reduce_binary(const BinaryForm& f);

// Reduced primitive positive definite forms of discriminant disc < 0,
// sorted by (a, |b|, sign of b with positive first).
std::vector<BinaryForm> enumerate_binary_classes(i64 disc);

}  // namespace thetaforms
