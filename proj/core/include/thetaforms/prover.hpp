#pragma once

// Proving identities between eta quotients on Gamma_0(N): Newman's criteria,
// cusp representatives, Ligozat's order formula and the valence bound.

#include <optional>
#include <string>
#include <vector>

#include "thetaforms/series.hpp"
#include "thetaforms/theta.hpp"

namespace thetaforms {

struct NewmanReport {
  bool divisors_ok = true;      // every delta divides the level
  bool weight_zero = true;      // sum r_delta = 0
  bool infinity_ok = true;      // sum delta r_delta = 0 mod 24
  bool zero_ok = true;          // sum (N / delta) r_delta = 0 mod 24
  bool square_ok = true;        // prod delta^r_delta is a rational square

  bool passed() const { return divisors_ok && weight_zero && infinity_ok && zero_ok && square_ok; }
  std::string to_string() const;
};

NewmanReport newman_check(const EtaQuotient& eq);

struct Cusp {
  i64 b = 1;
  i64 c = 1;
  bool infinity = false;  // the class of 1/N

  std::string to_string() const;
  friend bool operator==(const Cusp&, const Cusp&) = default;
};

// Inequivalent cusps of Gamma_0(N): for each d | N, the fractions a/d with a
// running over residues mod gcd(d, N/d) coprime to it (smallest positive lift
// coprime to d). The cusp 1/N is flagged as infinity. Ordered by d, then a.
std::vector<Cusp> cusp_reps(i64 N);

// Order of eq at b/c on Gamma_0(eq.level).
Rational ligozat_order(const EtaQuotient& eq, const Cusp& cusp);

struct Combination {
  i64 level = 1;
  std::vector<std::pair<Integer, EtaQuotient>> terms;
  Integer constant = 0;  // the combination is sum coef * quotient + constant

  std::string to_string() const;
};

struct OrderRow {
  Cusp cusp;
  std::vector<Rational> term_orders;
  Rational bound;  // lower bound for the order of the whole combination
};

// One row per cusp other than infinity, in cusp_reps order.
std::vector<OrderRow> order_table(const Combination& comb);

// The combination as a Laurent series: coefficients of q^k for
// base <= k < base + series.truncation().
struct LaurentExpansion {
  i64 base = 0;
  Series series;
};

// Expansion through exponent max_exponent inclusive.
LaurentExpansion expand_combination(const Combination& comb, i64 max_exponent);

enum class Verdict { proved, refuted, precondition_failed };

std::string verdict_name(Verdict v);

struct ProofCertificate {
  i64 level = 1;
  Combination combination;
  std::vector<NewmanReport> newman;
  std::vector<OrderRow> table;
  std::size_t cusp_count = 0;  // including infinity
  i64 bound = 0;               // B = -sum of negative per-cusp bounds
  std::size_t coefficients_checked = 0;
  Verdict verdict = Verdict::precondition_failed;
  std::optional<i64> refuted_at;  // exponent of the first nonzero coefficient
  std::string message;

  // Plain text: level, cusp table, B, coefficient count, verdict.
  std::string serialize() const;
};

ProofCertificate prove(const Combination& comb);

}  // namespace thetaforms
