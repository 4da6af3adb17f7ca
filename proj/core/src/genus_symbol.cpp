#include "thetaforms/genus_symbol.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace thetaforms {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

int rational_valuation(const Rational& x, i64 p) {
  Integer num = x.get_num();
  Integer den = x.get_den();
  const Integer pz = p;
  int v = 0;
  if (sgn(num) == 0) throw std::domain_error("valuation of zero");
  while (mpz_divisible_p(num.get_mpz_t(), pz.get_mpz_t())) {
    num /= pz;
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t())) {
    den /= pz;
    --v;
  }
  return v;
}

// x / p^v mapped to (Z/mZ)^*, m a power of p; x must have valuation v.
i64 unit_residue(const Rational& x, i64 p, int v, i64 m) {
  Rational u = x;
  Integer pv = 1;
  for (int i = 0; i < (v < 0 ? -v : v); ++i) pv *= p;
  if (v >= 0) u /= pv; else u *= pv;
  Integer num = u.get_num() % m;
  Integer den = u.get_den() % m;
  if (num < 0) num += m;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(m).get_mpz_t()) == 0)
    throw std::logic_error("unit_residue: denominator not invertible");
  Integer r = (num * inv) % m;
  return r.get_si();
}

struct Piece {
  int scale;
  std::vector<Rational> units;       // 1x1 blocks, divided by p^scale
  std::vector<Rational> block_dets;  // 2x2 even blocks (p = 2), det after scaling
};

// Schur complement of the pivot index set `piv` in m.
Matrix eliminate(const Matrix& m, const std::vector<std::size_t>& piv) {
  const std::size_t n = m.size();
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(piv.begin(), piv.end(), i) == piv.end()) rest.push_back(i);
  Matrix inv;
  if (piv.size() == 1) {
    inv = {{1 / m[piv[0]][piv[0]]}};
  } else {
    const Rational& a = m[piv[0]][piv[0]];
    const Rational& b = m[piv[0]][piv[1]];
    const Rational& c = m[piv[1]][piv[1]];
    const Rational det = a * c - b * b;
    inv = {{c / det, -b / det}, {-b / det, a / det}};
  }
  Matrix out(rest.size(), std::vector<Rational>(rest.size()));
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = 0; j < rest.size(); ++j) {
      Rational s = m[rest[i]][rest[j]];
      for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t l = 0; l < piv.size(); ++l) s -= m[rest[i]][piv[k]] * inv[k][l] * m[piv[l]][rest[j]];
      out[i][j] = s;
    }
  }
  return out;
}

}  // namespace

LocalSymbol jordan_symbol(const Gram3& gram, i64 p) {
  Matrix m(3, std::vector<Rational>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = gram[i][j];

  std::map<int, Piece> pieces;
  while (!m.empty()) {
    const std::size_t n = m.size();
    int vmin = 1 << 30;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(m[i][j]) != 0) vmin = std::min(vmin, rational_valuation(m[i][j], p));
    if (vmin == (1 << 30)) throw std::domain_error("jordan_symbol: degenerate Gram matrix");

    std::size_t diag = n;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(m[i][i]) != 0 && rational_valuation(m[i][i], p) == vmin) {
        diag = i;
        break;
      }
    if (diag == n && p != 2) {
      // Some off-diagonal entry attains vmin; e_i -> e_i + e_j produces a
      // diagonal entry of valuation vmin because 2 is a unit.
      std::size_t bi = 0, bj = 1;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(m[i][j]) != 0 && rational_valuation(m[i][j], p) == vmin) {
            bi = i;
            bj = j;
          }
      for (std::size_t k = 0; k < n; ++k) m[bi][k] += m[bj][k];
      for (std::size_t k = 0; k < n; ++k) m[k][bi] += m[k][bj];
      diag = bi;
    }
    Piece& piece = pieces[vmin];
    piece.scale = vmin;
    if (diag != n) {
      piece.units.push_back(m[diag][diag]);
      m = eliminate(m, {diag});
      continue;
    }
    // p = 2 and every diagonal entry has valuation > vmin: split off an even
    // 2x2 block 2^vmin [[2a b] [b 2c]] with b odd.
    std::size_t bi = 0, bj = 1;
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i)
      for (std::size_t j = i + 1; j < n && !found; ++j)
        if (sgn(m[i][j]) != 0 && rational_valuation(m[i][j], p) == vmin) {
          bi = i;
          bj = j;
          found = true;
        }
    piece.block_dets.push_back(m[bi][bi] * m[bj][bj] - m[bi][bj] * m[bi][bj]);
    m = eliminate(m, {bi, bj});
  }

  LocalSymbol sym;
  sym.prime = p;
  for (auto& [scale, piece] : pieces) {
    JordanConstituent c;
    c.scale = scale;
    c.rank = static_cast<int>(piece.units.size() + 2 * piece.block_dets.size());
    if (p == 2) {
      i64 det = 1;
      i64 oddity = 0;
      for (const auto& u : piece.units) {
        const i64 r = unit_residue(u, 2, scale, 8);
        det = det * r % 8;
        oddity += r;
      }
      for (const auto& d : piece.block_dets) det = det * unit_residue(d, 2, 2 * scale, 8) % 8;
      c.sign = (det == 1 || det == 7) ? 1 : -1;
      c.odd = !piece.units.empty();
      c.oddity = static_cast<int>(oddity % 8);
    } else {
      i64 det = 1;
      for (const auto& u : piece.units) det = det * unit_residue(u, p, scale, p) % p;
      c.sign = jacobi(det, p);
    }
    sym.constituents.push_back(c);
  }
  return sym;
}

LocalSymbol canonical_symbol(const LocalSymbol& raw) {
  if (raw.prime != 2) return raw;
  LocalSymbol s = raw;
  auto& c = s.constituents;
  const std::size_t n = c.size();

  // Compartments: maximal runs of odd constituents at consecutive scales.
  std::vector<std::vector<std::size_t>> compartments;
  for (std::size_t i = 0; i < n;) {
    if (!c[i].odd) {
      ++i;
      continue;
    }
    std::vector<std::size_t> comp{i};
    std::size_t j = i + 1;
    while (j < n && c[j].odd && c[j].scale == c[j - 1].scale + 1) comp.push_back(j++);
    compartments.push_back(comp);
    i = j;
  }
  // Oddity fusion: only the compartment total is invariant.
  for (const auto& comp : compartments) {
    int total = 0;
    for (std::size_t i : comp) {
      total += c[i].oddity;
      c[i].oddity = 0;
    }
    c[comp.front()].oddity = total % 8;
  }
  // Trains: broken wherever two adjacent scales (missing scales count as
  // even, rank 0) are both even.
  std::vector<std::vector<std::size_t>> trains;
  if (n > 0) trains.push_back({0});
  for (std::size_t i = 1; i < n; ++i) {
    const int gap = c[i].scale - c[i - 1].scale;
    const bool split = gap > 2 || (gap == 2 && !(c[i].odd && c[i - 1].odd)) ||
                       (gap == 1 && !c[i].odd && !c[i - 1].odd);
    if (split) trains.push_back({i});
    else trains.back().push_back(i);
  }
  // Sign walking: push every negative sign towards the start of its train;
  // each step changes the oddity of the compartments it touches by 4.
  for (const auto& train : trains) {
    for (std::size_t k = train.size(); k-- > 1;) {
      const std::size_t t1 = train[k];
      if (c[t1].sign != -1) continue;
      c[t1].sign = 1;
      c[t1 - 1].sign = -c[t1 - 1].sign;
      for (const auto& comp : compartments) {
        if (std::find(comp.begin(), comp.end(), t1) != comp.end() ||
            std::find(comp.begin(), comp.end(), t1 - 1) != comp.end())
          c[comp.front()].oddity = (c[comp.front()].oddity + 4) % 8;
      }
    }
  }
  return s;
}

std::string LocalSymbol::to_string() const {
  std::string out = fmt::format("{}:", prime);
  for (const auto& c : constituents) {
    out += fmt::format(" {}^{}{}", prime, c.scale, c.sign > 0 ? "+" : "-");
    out += fmt::format("{}", c.rank);
    if (prime == 2) out += c.odd ? fmt::format("_{}", c.oddity) : std::string("_II");
  }
  return out;
}

std::string GenusSymbol::to_string() const {
  std::string out;
  for (const auto& l : locals) {
    if (!out.empty()) out += " | ";
    out += l.to_string();
  }
  return out;
}

GenusSymbol genus_symbol(const TernaryForm& f) {
  if (!f.is_positive_definite())
    throw std::domain_error("genus_symbol: form (" + f.to_string() + ") is not positive definite");
  GenusSymbol g;
  g.discriminant = discriminant(f);
  std::vector<i64> primes = prime_divisors(2 * g.discriminant);
  for (i64 p : primes) g.locals.push_back(canonical_symbol(jordan_symbol(f.gram(), p)));
  return g;
}

}  // namespace thetaforms
