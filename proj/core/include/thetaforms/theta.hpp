#pragma once

// The special q-series used throughout: Ramanujan's f(a,b) and its
// specializations, the Euler product E(q), and eta-quotient expansions.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thetaforms/arith.hpp"
#include "thetaforms/series.hpp"

namespace thetaforms {

// prod over delta | level of eta(delta z)^r_delta.
struct EtaQuotient {
  i64 level = 1;
  std::map<i64, i64> exponents;  // delta -> r_delta, zero exponents omitted

  // Throws if some delta does not divide the level.
  void validate() const;
  // sum delta * r_delta; the q-order at infinity is this over 24.
  i64 weighted_sum() const;
  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

// f(s_x q^x, s_y q^y) = sum over all integers n of
//   s_x^(n(n-1)/2) s_y^(n(n+1)/2) q^(x n(n-1)/2 + y n(n+1)/2),
// with signs s_x, s_y in {+1, -1}.
Series general_theta(i64 x, i64 y, std::size_t truncation, int sign_x = 1, int sign_y = 1);

// E(q) = prod_{j >= 1} (1 - q^j).
Series euler(std::size_t truncation);

struct EtaExpansion {
  i64 offset = 0;  // the quotient equals q^offset * series
  Series series;
};

// Requires sum delta * r_delta divisible by 24.
EtaExpansion expand_eta_quotient(const EtaQuotient& eq, std::size_t truncation);

// Built-in one-argument functions: phi, psi, E, chi, u, f12 (= f(q,q^2)) and
// f15 (= f(q,q^5)). The argument is sign * q^power.
Series named_function(std::string_view name, std::size_t truncation, unsigned power = 1, int sign = 1);
bool is_named_function(std::string_view name);
const std::vector<std::string>& named_function_names();

}  // namespace thetaforms
