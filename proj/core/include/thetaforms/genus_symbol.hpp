#pragma once

// p-adic Jordan decompositions and canonical local genus symbols
// (Conway-Sloane conventions) for the doubled Gram matrix of a ternary form.

#include <compare>
#include <string>
#include <vector>

#include "thetaforms/forms.hpp"

namespace thetaforms {

// One Jordan constituent p^scale * (unimodular part).
struct JordanConstituent {
  int scale = 0;
  int rank = 0;
  // Odd p: Legendre symbol of the unit determinant. p = 2: +1 if the unit
  // determinant is +-1 mod 8, -1 if it is +-3 mod 8.
  int sign = 1;
  bool odd = false;  // p = 2 only: type I (odd) versus type II (even)
  int oddity = 0;    // p = 2 only: trace of a diagonalization mod 8

  friend auto operator<=>(const JordanConstituent&, const JordanConstituent&) = default;
};

struct LocalSymbol {
  i64 prime = 2;
  std::vector<JordanConstituent> constituents;  // increasing scale, rank > 0

  std::string to_string() const;
  friend auto operator<=>(const LocalSymbol&, const LocalSymbol&) = default;
};

// Raw Jordan decomposition of the doubled Gram matrix over Z_p.
LocalSymbol jordan_symbol(const Gram3& gram, i64 p);

// Canonical form: equal canonical symbols <=> isometric over Z_p.
// For odd p the raw symbol is already canonical; for p = 2 oddity fusion and
// sign walking are applied.
LocalSymbol canonical_symbol(const LocalSymbol& raw);

struct GenusSymbol {
  i64 discriminant = 0;
  std::vector<LocalSymbol> locals;  // one per prime dividing 2 * discriminant

  std::string to_string() const;
  friend auto operator<=>(const GenusSymbol&, const GenusSymbol&) = default;
};

GenusSymbol genus_symbol(const TernaryForm& f);

}  // namespace thetaforms
