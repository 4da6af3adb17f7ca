#pragma once

// The identity registry: a small text format holding every identity to be
// checked, parsed into expression trees.
//
//   entry      := NAME ':' MODE ['(' key=value {',' key=value} ')'] ':' BODY ['where' COND {'and' COND}]
//   modes      := series | sift | ternary | positivity | modeq3 | eta-valence
//
// An entry starts at column 1; indented lines continue it; '#' starts a
// comment. Series bodies use integers, q^j, named functions phi psi E chi u
// f12 f15 applied to +-q^k, f(+-q^a, +-q^b), eta[d^r, ...], S[t,s](expr),
// + - * /, ^INT and parentheses. Ternary bodies are integer combinations of
// (a,b,c,d,e,f)(M), (...)(M/d), wt(...)(M) = 16 R(M)/|Aut|, W[S,i](M),
// optionally multiplied by eps[S,i,w] or eps(a,b,c,d,e,f)[w]. Modular
// equation bodies use m, alpha, beta, rational exponents ^(a/b) and integers.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thetaforms/forms.hpp"
#include "thetaforms/series.hpp"
#include "thetaforms/theta.hpp"

namespace thetaforms {

enum class Mode { series, sift, ternary, positivity, modeq3, eta_valence };

std::string mode_name(Mode m);

class RegistryError : public std::runtime_error {
 public:
  RegistryError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct SeriesExpr;
using SeriesExprPtr = std::shared_ptr<const SeriesExpr>;

struct SeriesExpr {
  enum class Kind { integer, q_power, named, theta, eta, add, sub, mul, div, neg, pow, sift };
  Kind kind = Kind::integer;
  Integer value;            // integer
  i64 exponent = 0;         // q_power, pow
  std::string name;         // named
  i64 power = 1;            // named, theta (first argument)
  int sign = 1;             // named, theta (first argument)
  i64 power2 = 1;           // theta second argument
  int sign2 = 1;
  EtaQuotient eta;          // eta
  unsigned t = 1, s = 0;    // sift
  std::vector<SeriesExprPtr> kids;

  std::string to_string() const;
};

// The coefficient sequence of expr at the given truncation.
Series evaluate(const SeriesExpr& expr, std::size_t truncation);

struct EpsRef {
  // Either the S-genus character eps(i, w) or the character of the genus of
  // a specific form.
  bool by_form = false;
  i64 S = 0;
  i64 index = 0;
  TernaryForm form;
  i64 w = 1;
};

struct CountTerm {
  enum class Kind { count, weighted, sgenus };
  Kind kind = Kind::count;
  TernaryForm form;  // count, weighted
  i64 S = 0;         // sgenus
  i64 index = 0;     // sgenus, 1-based
  i64 divisor = 1;   // argument M / divisor
};

struct TernaryTerm {
  Integer coefficient = 1;
  std::vector<EpsRef> eps;
  std::optional<CountTerm> count;  // absent for a constant term
};

struct Condition {
  enum class Kind { residue, divides, exact, jacobi, gcd };
  Kind kind = Kind::residue;
  std::vector<i64> residues;  // residue
  i64 modulus = 1;            // residue, divides, exact, jacobi, gcd
  i64 exponent = 1;           // exact: modulus^exponent || M
  i64 value = 0;              // jacobi (+-1), gcd

  bool holds(i64 M) const;
  std::string to_string() const;
};

struct ModExpr;
using ModExprPtr = std::shared_ptr<const ModExpr>;

struct ModExpr {
  enum class Kind { integer, m, alpha, beta, add, sub, mul, div, neg, pow };
  Kind kind = Kind::integer;
  Integer value;
  Rational exponent = 1;  // alpha, beta: alpha^exponent; pow: exponent
  std::vector<ModExprPtr> kids;
};

struct EtaTerm {
  Integer coefficient;
  std::optional<EtaQuotient> quotient;  // absent for a constant
};

struct IdentitySpec {
  std::string name;
  Mode mode = Mode::series;
  std::map<std::string, std::string> options;
  std::size_t line = 0;
  std::string text;  // body as written

  // series, sift, positivity (lhs only)
  SeriesExprPtr lhs, rhs;
  // ternary
  std::vector<TernaryTerm> tlhs, trhs;
  // modeq3
  ModExprPtr mlhs, mrhs;
  // eta-valence
  std::vector<EtaTerm> elhs, erhs;

  std::vector<Condition> conditions;
};

std::vector<IdentitySpec> parse_registry(std::string_view text);
// A single series expression, e.g. "phi(q^2)*psi(-q)".
SeriesExprPtr parse_series_expression(std::string_view text);
std::vector<IdentitySpec> load_registry(const std::string& path);

// Path compiled into the build, overridden by THETAFORMS_REGISTRY.
std::string default_registry_path();

}  // namespace thetaforms
