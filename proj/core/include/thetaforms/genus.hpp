#pragma once

// Genera of ternary forms, genera of binary forms, and the S-genus built by
// lifting the binary genera of discriminant -8S to discriminant 16S^2.

#include <map>
#include <string>
#include <vector>

#include "thetaforms/forms.hpp"
#include "thetaforms/genus_symbol.hpp"

namespace thetaforms {

struct GenusRecord {
  i64 discriminant = 0;
  GenusSymbol symbol;
  std::vector<TernaryForm> classes;  // class representatives in enumeration order

  bool contains_class_of(const TernaryForm& f) const;
};

// Same local symbol at every p | 2D. Discriminants must agree.
bool same_genus(const TernaryForm& f, const TernaryForm& g);

// Classes of discriminant D grouped by genus, ordered by first representative.
std::vector<GenusRecord> genus_partition(i64 disc);

// The genus record (restricted to classes of its discriminant) containing f.
GenusRecord genus_of(const TernaryForm& f);

// Primitive reduced binary forms of discriminant disc grouped by the set of
// values they represent in (Z/|disc|)^*.
std::vector<std::vector<BinaryForm>> binary_genus_partition(i64 disc);

// a x^2 + |b| xy + c y^2 + 2S z^2.
TernaryForm lift_binary_to_ternary(i64 S, const BinaryForm& bf);

struct SGenus {
  i64 S = 0;
  std::vector<i64> primes;                            // prime divisors of S
  std::vector<std::vector<BinaryForm>> binary_genera;  // BG_i
  std::vector<GenusRecord> tg;                        // TG_i, aligned with BG_i
  std::map<i64, std::vector<int>> epsilon;            // w | S  ->  eps(i, w)
};

// Requires S odd, squarefree, S >= 3. Throws std::runtime_error if two
// classes of one binary genus lift to different ternary genera or two binary
// genera lift to the same one.
//
// Ordering: BG_i are sorted by the least odd integer they represent, ties
// broken by the least reduced form; this reproduces the TG_1..TG_4 numbering
// used for S = 15.
SGenus build_sgenus(i64 S);

// (-n | w) for the least n represented by tg with gcd(n, w) = 1; confirmed on
// further represented values. Searches values up to `bound` (0 means 16S^2
// where S is recovered from the discriminant).
int epsilon(const GenusRecord& tg, i64 w, i64 bound = 0);

// sum over classes of 16 / |Aut(f)|; throws if a summand is not an integer.
i64 mass_direct(const GenusRecord& tg);

// prod over p | S of (p + eps(tg, p)) / 2.
i64 mass_formula(const GenusRecord& tg, i64 S);

i64 sgenus_mass(const SGenus& sg);

// W(M) = sum over classes of 16 R_f(M) / |Aut(f)|.
i64 weighted_count(const GenusRecord& tg, i64 M);
// W(M) for 0 <= M <= max_m.
std::vector<i64> weighted_counts(const GenusRecord& tg, i64 max_m);

// sum_i eps(i, w) == 0.
bool orthogonality_check(const SGenus& sg, i64 w);

struct SGenusRow {
  int index = 0;  // 1-based
  std::vector<TernaryForm> classes;
  std::vector<std::pair<i64, int>> eps;  // (p, eps(i, p)) for p | S
  i64 mass_direct = 0;
  i64 mass_formula = 0;
};

std::vector<SGenusRow> sgenus_report(const SGenus& sg);

}  // namespace thetaforms
