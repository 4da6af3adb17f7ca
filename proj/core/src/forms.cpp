#include "thetaforms/forms.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace thetaforms {

namespace {

// Visit every integer vector with f(v) <= bound. Nested bounds come from
// completing the square:
//   4a f = (2a x + f y + e z)^2 + T(y, z),
//   T = A y^2 + B y z + C z^2 with A = 4ab - f^2, B = 4ad - 2ef, C = 4ac - e^2,
//   4A T = (2A y + B z)^2 + (4AC - B^2) z^2.
template <typename Visit>
void for_each_vector(const TernaryForm& q, i64 bound, Visit&& visit) {
  if (bound < 0) return;
  const i128 a = q.a;
  const i128 A = 4 * a * q.b - i128(q.f) * q.f;
  const i128 B = 4 * a * q.d - 2 * i128(q.e) * q.f;
  const i128 C = 4 * a * q.c - i128(q.e) * q.e;
  const i128 delta = 4 * A * C - B * B;
  const i128 cap_z = 16 * a * A * bound;
  const i64 zmax = isqrt(cap_z / delta);
  for (i64 z = -zmax; z <= zmax; ++z) {
    const i128 rz = cap_z - delta * z * z;
    if (rz < 0) continue;
    const i64 t = isqrt(rz);
    const i64 ylo = ceil_div(-t - B * z, 2 * A);
    const i64 yhi = floor_div(t - B * z, 2 * A);
    for (i64 y = ylo; y <= yhi; ++y) {
      const i128 rest = 4 * a * bound - (A * y * y + B * y * z + C * z * z);
      if (rest < 0) continue;
      const i64 s = isqrt(rest);
      const i128 lin = i128(q.f) * y + i128(q.e) * z;
      const i64 xlo = ceil_div(-s - lin, 2 * a);
      const i64 xhi = floor_div(s - lin, 2 * a);
      const i64 base = q.b * y * y + q.c * z * z + q.d * y * z;
      const i64 slope = static_cast<i64>(lin);
      for (i64 x = xlo; x <= xhi; ++x) {
        const i64 v = q.a * x * x + slope * x + base;
        if (v <= bound) visit(x, y, z, v);
      }
    }
  }
}

void require_definite(const TernaryForm& f) {
  if (!f.is_positive_definite())
    throw std::domain_error("ternary form (" + f.to_string() + ") is not positive definite");
}

// Count (or detect) U with columns u_i, g(u_i) = diag of `target`, and
// B_g(u_i, u_j) equal to the off-diagonal entries of target's Gram matrix.
std::uint64_t count_isometries(const TernaryForm& target, const TernaryForm& g, bool stop_at_first) {
  const Gram3 want = target.gram();
  const Gram3 gg = g.gram();
  const i64 top = std::max({target.a, target.b, target.c});
  std::map<i64, std::vector<Vec3>> by_norm;
  for (const Vec3& v : short_vectors(g, top)) by_norm[g.value(v)].push_back(v);
  const auto& v1s = by_norm[target.a];
  const auto& v2s = by_norm[target.b];
  const auto& v3s = by_norm[target.c];
  std::uint64_t found = 0;
  for (const Vec3& u1 : v1s) {
    for (const Vec3& u2 : v2s) {
      if (bilinear(gg, u1, u2) != want[0][1]) continue;
      for (const Vec3& u3 : v3s) {
        if (bilinear(gg, u1, u3) != want[0][2]) continue;
        if (bilinear(gg, u2, u3) != want[1][2]) continue;
        ++found;
        if (stop_at_first) return found;
      }
    }
  }
  return found;
}

}  // namespace

bool TernaryForm::is_positive_definite() const {
  const i128 m1 = 2 * a;
  const i128 m2 = 4 * i128(a) * b - i128(f) * f;
  return m1 > 0 && m2 > 0 && discriminant(*this) > 0;
}

std::string TernaryForm::to_string() const { return fmt::format("{},{},{},{},{},{}", a, b, c, d, e, f); }

TernaryForm TernaryForm::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  std::array<i64, 6> v{};
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (pos < text.size() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v[static_cast<std::size_t>(i)]);
    if (ec != std::errc() || ptr == first)
      throw std::invalid_argument("malformed ternary form literal '" + std::string(text) + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (i < 5) {
      if (pos >= text.size() || text[pos] != ',')
        throw std::invalid_argument("ternary form literal '" + std::string(text) + "' needs six entries");
      ++pos;
    }
  }
  if (pos != text.size())
    throw std::invalid_argument("ternary form literal '" + std::string(text) + "' has trailing text");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

TernaryForm TernaryForm::from_gram(const Gram3& g) {
  for (int i = 0; i < 3; ++i)
    if (g[i][i] % 2 != 0) throw std::invalid_argument("doubled Gram matrix must have even diagonal");
  return {g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[1][2], g[0][2], g[0][1]};
}

std::string BinaryForm::to_string() const { return fmt::format("{},{},{}", a, b, c); }

i64 discriminant(const TernaryForm& q) {
  const Gram3 g = q.gram();
  const i128 det = i128(g[0][0]) * (i128(g[1][1]) * g[2][2] - i128(g[1][2]) * g[2][1]) -
                   i128(g[0][1]) * (i128(g[1][0]) * g[2][2] - i128(g[1][2]) * g[2][0]) +
                   i128(g[0][2]) * (i128(g[1][0]) * g[2][1] - i128(g[1][1]) * g[2][0]);
  // det of the doubled Gram matrix is always even: 8abc + 2def - 2(ad^2 + be^2 + cf^2).
  return static_cast<i64>(det / 2);
}

i64 bilinear(const Gram3& g, const Vec3& u, const Vec3& v) {
  i64 s = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += u[i] * g[i][j] * v[j];
  return s;
}

std::uint64_t repcount(const TernaryForm& f, i64 m) {
  require_definite(f);
  if (m < 0) return 0;
  std::uint64_t n = 0;
  for_each_vector(f, m, [&](i64, i64, i64, i64 v) {
    if (v == m) ++n;
  });
  return n;
}

std::vector<std::uint64_t> representation_counts(const TernaryForm& f, i64 max_m) {
  require_definite(f);
  if (max_m < 0) return {};
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_m) + 1, 0);
  for_each_vector(f, max_m, [&](i64, i64, i64, i64 v) { ++counts[static_cast<std::size_t>(v)]; });
  return counts;
}

std::vector<std::uint64_t> representation_counts(const BinaryForm& q, i64 max_m) {
  if (!q.is_positive_definite())
    throw std::domain_error("binary form (" + q.to_string() + ") is not positive definite");
  if (max_m < 0) return {};
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_m) + 1, 0);
  // 4a Q = (2a x + b y)^2 + |disc| y^2
  const i128 a = q.a;
  const i128 nd = -i128(q.discriminant());
  const i64 ymax = isqrt(4 * a * max_m / nd);
  for (i64 y = -ymax; y <= ymax; ++y) {
    const i128 rest = 4 * a * max_m - nd * y * y;
    if (rest < 0) continue;
    const i64 s = isqrt(rest);
    const i64 xlo = ceil_div(-s - i128(q.b) * y, 2 * a);
    const i64 xhi = floor_div(s - i128(q.b) * y, 2 * a);
    for (i64 x = xlo; x <= xhi; ++x) {
      const i64 v = q.value(x, y);
      if (v <= max_m) ++counts[static_cast<std::size_t>(v)];
    }
  }
  return counts;
}

std::vector<Vec3> short_vectors(const TernaryForm& f, i64 bound) {
  require_definite(f);
  std::vector<Vec3> out;
  for_each_vector(f, bound, [&](i64 x, i64 y, i64 z, i64) { out.push_back({x, y, z}); });
  return out;
}

namespace {

Series counts_to_series(const std::vector<std::uint64_t>& counts) {
  std::vector<Integer> c;
  c.reserve(counts.size());
  for (auto n : counts) {
    Integer v;
    mpz_set_ui(v.get_mpz_t(), static_cast<unsigned long>(n));
    c.push_back(std::move(v));
  }
  return Series(std::move(c));
}

}  // namespace

Series theta_series(const TernaryForm& f, std::size_t truncation) {
  if (truncation == 0) return Series(0);
  return counts_to_series(representation_counts(f, static_cast<i64>(truncation) - 1));
}

Series theta_series(const BinaryForm& f, std::size_t truncation) {
  if (truncation == 0) return Series(0);
  return counts_to_series(representation_counts(f, static_cast<i64>(truncation) - 1));
}

std::uint64_t aut_count(const TernaryForm& f) {
  require_definite(f);
  return count_isometries(f, f, false);
}

bool ternary_equivalent(const TernaryForm& f, const TernaryForm& g) {
  require_definite(f);
  require_definite(g);
  if (discriminant(f) != discriminant(g))
    throw std::invalid_argument(fmt::format("ternary_equivalent: discriminants differ ({} vs {})",
                                            discriminant(f), discriminant(g)));
  if (f == g) return true;
  return count_isometries(f, g, true) > 0;
}

bool representative_less(const TernaryForm& x, const TernaryForm& y) {
  auto key = [](const TernaryForm& q) {
    return std::make_tuple(q.a, q.b, q.c, std::abs(q.d), std::abs(q.e), std::abs(q.f), q.d < 0, q.e < 0,
                           q.f < 0);
  };
  return key(x) < key(y);
}

std::vector<TernaryForm> enumerate_ternary_classes(i64 disc) {
  if (disc <= 0) return {};
  // Candidate superset: every class has a Minkowski-reduced member with
  // a <= b <= c, |d| <= b, |e| <= a, |f| <= a and 2abc <= disc. Solving the
  // discriminant for c leaves loops over a, b, d, e, f only:
  //   disc = c (4ab - f^2) - a d^2 - b e^2 + d e f.
  std::vector<TernaryForm> candidates;
  for (i64 a = 1; 2 * a * a * a <= disc; ++a) {
    for (i64 b = a; 2 * a * b * b <= disc; ++b) {
      for (i64 f = -a; f <= a; ++f) {
        const i64 den = 4 * a * b - f * f;
        for (i64 e = -a; e <= a; ++e) {
          for (i64 d = -b; d <= b; ++d) {
            const i64 num = disc + a * d * d + b * e * e - d * e * f;
            if (num <= 0 || num % den != 0) continue;
            const i64 c = num / den;
            if (c < b || 2 * a * b * c > disc) continue;
            TernaryForm q{a, b, c, d, e, f};
            if (!q.is_positive_definite()) continue;
            candidates.push_back(q);
          }
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), representative_less);

  // Bucket by a cheap class invariant (initial theta coefficients), then
  // settle each candidate with explicit equivalence tests.
  i64 sig_bound = 8;
  for (const auto& q : candidates) sig_bound = std::max(sig_bound, q.c);
  sig_bound = std::min<i64>(sig_bound, 4 * (isqrt(disc) + 8));
  std::map<std::vector<std::uint64_t>, std::vector<TernaryForm>> kept;
  std::vector<TernaryForm> reps;
  for (const auto& q : candidates) {
    auto sig = representation_counts(q, sig_bound);
    auto& bucket = kept[sig];
    bool seen = false;
    for (const auto& r : bucket) {
      if (ternary_equivalent(r, q)) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      bucket.push_back(q);
      reps.push_back(q);
    }
  }
  std::sort(reps.begin(), reps.end(), representative_less);
  return reps;
}

BinaryForm reduce_binary(const BinaryForm& form) {
  if (!form.is_positive_definite())
    throw std::domain_error("reduce_binary: form (" + form.to_string() + ") is not positive definite");
  i64 a = form.a, b = form.b, c = form.c;
  while (true) {
    // Move b into (-a, a] with x -> x + k y.
    if (b > a || b <= -a) {
      const i64 k = floor_div(i128(a) - b, 2 * a);
      const i64 nb = b + 2 * a * k;
      c = a * k * k + b * k + c;
      b = nb;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (b < 0 && (a == c || -b == a)) b = -b;
  return {a, b, c};
}

std::vector<BinaryForm> enumerate_binary_classes(i64 disc) {
  if (disc >= 0 || (mod(disc, 4) != 0 && mod(disc, 4) != 1))
    throw std::invalid_argument(fmt::format("enumerate_binary_classes: bad discriminant {}", disc));
  std::vector<BinaryForm> out;
  for (i64 a = 1; 3 * a * a <= -disc; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end(), [](const BinaryForm& x, const BinaryForm& y) {
    return std::make_tuple(x.a, std::abs(x.b), x.b < 0, x.c) < std::make_tuple(y.a, std::abs(y.b), y.b < 0, y.c);
  });
  return out;
}

}  // namespace thetaforms
