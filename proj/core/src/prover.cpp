#include "thetaforms/prover.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace thetaforms {

std::string NewmanReport::to_string() const {
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  return fmt::format("divisors {}, sum r {}, sum delta r {}, sum (N/delta) r {}, square {}", mark(divisors_ok),
                     mark(weight_zero), mark(infinity_ok), mark(zero_ok), mark(square_ok));
}

NewmanReport newman_check(const EtaQuotient& eq) {
  NewmanReport rep;
  i64 sum_r = 0, sum_dr = 0, sum_nr = 0;
  std::map<i64, i64> prime_exp;
  for (auto [delta, r] : eq.exponents) {
    if (delta < 1 || eq.level % delta != 0) {
      rep.divisors_ok = false;
      continue;
    }
    sum_r += r;
    sum_dr += delta * r;
    sum_nr += (eq.level / delta) * r;
    for (auto [p, k] : factorize(delta)) prime_exp[p] += k * r;
  }
  rep.weight_zero = sum_r == 0;
  rep.infinity_ok = mod(sum_dr, 24) == 0;
  rep.zero_ok = mod(sum_nr, 24) == 0;
  rep.square_ok = std::all_of(prime_exp.begin(), prime_exp.end(), [](const auto& pe) { return pe.second % 2 == 0; });
  return rep;
}

std::string Cusp::to_string() const {
  if (infinity) return "inf";
  if (c == 1) return fmt::format("{}", b);
  return fmt::format("{}/{}", b, c);
}

std::vector<Cusp> cusp_reps(i64 N) {
  if (N < 1) throw std::invalid_argument("cusp_reps: level must be positive");
  std::vector<Cusp> out;
  for (i64 d : divisors(N)) {
    const i64 g = gcd(d, N / d);
    for (i64 r = 0; r < g; ++r) {
      if (gcd(r, g) != 1) continue;
      i64 a = r == 0 ? g : r;
      while (gcd(a, d) != 1) a += g;
      out.push_back({a, d, d == N});
    }
  }
  return out;
}

Rational ligozat_order(const EtaQuotient& eq, const Cusp& cusp) {
  const i64 n = eq.level;
  const i64 c = cusp.c;
  Rational sum = 0;
  for (auto [delta, r] : eq.exponents) {
    const i64 g = gcd(c, delta);
    sum += Rational(Integer(r) * g * g, delta);
  }
  const i64 g = gcd(c * c, n);
  Rational out = Rational(n, 24 * g) * sum;
  out.canonicalize();
  return out;
}

std::string Combination::to_string() const {
  std::string out;
  for (const auto& [coef, eq] : terms) {
    if (!out.empty()) out += " + ";
    out += fmt::format("{}*{}", coef.get_str(), eq.to_string());
  }
  if (constant != 0) out += fmt::format(" + ({})", constant.get_str());
  return out;
}

std::vector<OrderRow> order_table(const Combination& comb) {
  std::vector<OrderRow> rows;
  for (const Cusp& cusp : cusp_reps(comb.level)) {
    if (cusp.infinity) continue;
    OrderRow row;
    row.cusp = cusp;
    bool first = true;
    for (const auto& [coef, eq] : comb.terms) {
      Rational o = ligozat_order(eq, cusp);
      row.term_orders.push_back(o);
      if (first || o < row.bound) row.bound = o;
      first = false;
    }
    if (comb.constant != 0 && (first || row.bound > 0)) row.bound = 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

LaurentExpansion expand_combination(const Combination& comb, i64 max_exponent) {
  i64 base = comb.constant != 0 ? 0 : max_exponent + 1;
  for (const auto& [coef, eq] : comb.terms) base = std::min(base, eq.weighted_sum() / 24);
  base = std::min<i64>(base, 0);
  const std::size_t len = static_cast<std::size_t>(std::max<i64>(max_exponent + 1 - base, 0));
  Series total(len);
  for (const auto& [coef, eq] : comb.terms) {
    const i64 off = eq.weighted_sum() / 24 - base;
    if (off >= static_cast<i64>(len)) continue;
    EtaExpansion e = expand_eta_quotient(eq, len - static_cast<std::size_t>(off));
    std::vector<Integer> c(len);
    for (std::size_t k = 0; k < e.series.truncation(); ++k) c[k + static_cast<std::size_t>(off)] = e.series[k] * coef;
    total = add(total, Series(std::move(c)));
  }
  if (comb.constant != 0 && len > static_cast<std::size_t>(-base))
    total = add(total, Series::monomial(static_cast<std::size_t>(-base), comb.constant, len));
  return {base, std::move(total)};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proved: return "proved";
    case Verdict::refuted: return "refuted";
    case Verdict::precondition_failed: return "precondition failed";
  }
  return "?";
}

ProofCertificate prove(const Combination& comb) {
  ProofCertificate cert;
  cert.level = comb.level;
  cert.combination = comb;
  cert.cusp_count = cusp_reps(comb.level).size();
  bool ok = true;
  for (const auto& [coef, eq] : comb.terms) {
    EtaQuotient at_level = eq;
    at_level.level = comb.level;
    NewmanReport rep = newman_check(at_level);
    if (!rep.passed()) {
      ok = false;
      cert.message += fmt::format("{} is not a modular function on Gamma0({}): {}. ", eq.to_string(), comb.level,
                                  rep.to_string());
    }
    cert.newman.push_back(rep);
  }
  if (!ok) {
    cert.verdict = Verdict::precondition_failed;
    return cert;
  }
  Combination leveled = comb;
  for (auto& [coef, eq] : leveled.terms) eq.level = comb.level;
  cert.table = order_table(leveled);
  Rational deficit = 0;
  for (const auto& row : cert.table)
    if (row.bound < 0) deficit -= row.bound;
  Integer b = deficit.get_num() / deficit.get_den();
  if (b * deficit.get_den() != deficit.get_num()) b += 1;
  cert.bound = b.get_si();

  const LaurentExpansion ex = expand_combination(leveled, cert.bound);
  cert.coefficients_checked = ex.series.truncation();
  for (std::size_t k = 0; k < ex.series.truncation(); ++k) {
    if (sgn(ex.series[k]) != 0) {
      cert.verdict = Verdict::refuted;
      cert.refuted_at = ex.base + static_cast<i64>(k);
      cert.message = fmt::format("coefficient of q^{} is {}", *cert.refuted_at, ex.series[k].get_str());
      return cert;
    }
  }
  cert.verdict = Verdict::proved;
  cert.message = fmt::format("order at infinity exceeds {}; the combination vanishes identically", cert.bound);
  return cert;
}

std::string ProofCertificate::serialize() const {
  std::string out = fmt::format("level {}\ncusps {}\n", level, cusp_count);
  out += "cusp";
  for (std::size_t i = 0; i < combination.terms.size(); ++i) out += fmt::format("\tO{}", i + 1);
  out += "\tbound\n";
  for (const auto& row : table) {
    out += row.cusp.to_string();
    for (const auto& o : row.term_orders) out += "\t" + o.get_str();
    out += "\t" + row.bound.get_str() + "\n";
  }
  out += fmt::format("B {}\ncoefficients {}\nverdict {}", bound, coefficients_checked, verdict_name(verdict));
  if (refuted_at) out += fmt::format(" at {}", *refuted_at);
  out += "\n";
  if (!message.empty()) out += "note " + message + "\n";
  return out;
}

}  // namespace thetaforms
