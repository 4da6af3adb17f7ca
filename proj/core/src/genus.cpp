#include "thetaforms/genus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace thetaforms {

bool GenusRecord::contains_class_of(const TernaryForm& f) const {
  if (discriminant != thetaforms::discriminant(f)) return false;
  return std::any_of(classes.begin(), classes.end(), [&](const TernaryForm& g) { return ternary_equivalent(g, f); });
}

bool same_genus(const TernaryForm& f, const TernaryForm& g) {
  const i64 df = discriminant(f), dg = discriminant(g);
  if (df != dg)
    throw std::invalid_argument(fmt::format("same_genus: discriminants differ ({} vs {})", df, dg));
  return genus_symbol(f) == genus_symbol(g);
}

std::vector<GenusRecord> genus_partition(i64 disc) {
  std::vector<GenusRecord> out;
  std::map<GenusSymbol, std::size_t> index;
  for (const auto& f : enumerate_ternary_classes(disc)) {
    GenusSymbol s = genus_symbol(f);
    auto it = index.find(s);
    if (it == index.end()) {
      index.emplace(s, out.size());
      out.push_back({disc, s, {f}});
    } else {
      out[it->second].classes.push_back(f);
    }
  }
  return out;
}

GenusRecord genus_of(const TernaryForm& f) {
  const GenusSymbol s = genus_symbol(f);
  for (auto& rec : genus_partition(discriminant(f)))
    if (rec.symbol == s) return rec;
  throw std::logic_error("genus_of: form (" + f.to_string() + ") missing from its class enumeration");
}

namespace {

std::set<i64> unit_values(const BinaryForm& f, i64 m) {
  std::set<i64> vals;
  for (i64 x = 0; x < m; ++x)
    for (i64 y = 0; y < m; ++y) {
      const i64 v = mod(f.value(x, y), m);
      if (gcd(v, m) == 1) vals.insert(v);
    }
  return vals;
}

i64 least_odd_value(const BinaryForm& f) {
  for (i64 bound = 16;; bound *= 2) {
    auto counts = representation_counts(f, bound);
    for (i64 n = 1; n <= bound; n += 2)
      if (counts[n] > 0) return n;
  }
}

}  // namespace

std::vector<std::vector<BinaryForm>> binary_genus_partition(i64 disc) {
  const i64 m = -disc;
  std::vector<std::vector<BinaryForm>> out;
  std::vector<std::set<i64>> keys;
  for (const auto& f : enumerate_binary_classes(disc)) {
    auto vals = unit_values(f, m);
    auto it = std::find(keys.begin(), keys.end(), vals);
    if (it == keys.end()) {
      keys.push_back(std::move(vals));
      out.push_back({f});
    } else {
      out[it - keys.begin()].push_back(f);
    }
  }
  return out;
}

TernaryForm lift_binary_to_ternary(i64 S, const BinaryForm& bf) {
  return {bf.a, bf.c, 2 * S, 0, 0, std::abs(bf.b)};
}

SGenus build_sgenus(i64 S) {
  if (S < 3 || S % 2 == 0 || !is_squarefree(S))
    throw std::invalid_argument(fmt::format("build_sgenus: S = {} must be odd, squarefree and >= 3", S));
  SGenus sg;
  sg.S = S;
  sg.primes = prime_divisors(S);

  auto bgs = binary_genus_partition(-8 * S);
  std::vector<std::tuple<i64, BinaryForm, std::vector<BinaryForm>>> keyed;
  for (auto& bg : bgs) {
    i64 least = 1LL << 62;
    for (const auto& f : bg) least = std::min(least, least_odd_value(f));
    keyed.emplace_back(least, bg.front(), bg);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  const std::size_t expected = std::size_t{1} << sg.primes.size();
  if (keyed.size() != expected)
    throw std::runtime_error(fmt::format("build_sgenus: {} binary genera of discriminant {}, expected {}",
                                         keyed.size(), -8 * S, expected));

  const auto partition = genus_partition(16 * S * S);
  auto locate = [&](const TernaryForm& t) -> std::size_t {
    const GenusSymbol s = genus_symbol(t);
    for (std::size_t i = 0; i < partition.size(); ++i)
      if (partition[i].symbol == s) return i;
    throw std::logic_error("build_sgenus: lifted form (" + t.to_string() + ") has no genus");
  };

  std::set<std::size_t> used;
  for (auto& [least, first, bg] : keyed) {
    const std::size_t idx = locate(lift_binary_to_ternary(S, first));
    for (const auto& f : bg) {
      if (locate(lift_binary_to_ternary(S, f)) != idx)
        throw std::runtime_error(fmt::format("build_sgenus: lifts of ({}) and ({}) lie in different genera",
                                             first.to_string(), f.to_string()));
    }
    if (!used.insert(idx).second)
      throw std::runtime_error(fmt::format("build_sgenus: two binary genera lift into the genus of ({})",
                                           partition[idx].classes.front().to_string()));
    sg.binary_genera.push_back(bg);
    sg.tg.push_back(partition[idx]);
  }

  for (i64 w : divisors(S)) {
    std::vector<int> col;
    for (const auto& tg : sg.tg) col.push_back(epsilon(tg, w));
    sg.epsilon[w] = col;
  }
  return sg;
}

int epsilon(const GenusRecord& tg, i64 w, i64 bound) {
  if (w < 1) throw std::invalid_argument("epsilon: w must be positive");
  if (w == 1) return 1;
  if (bound <= 0) bound = tg.discriminant;  // 16 S^2
  std::vector<i64> found;
  for (i64 cap = std::min<i64>(64, bound);; cap = std::min(cap * 2, bound)) {
    found.clear();
    std::vector<bool> hit(cap + 1, false);
    for (const auto& f : tg.classes) {
      auto counts = representation_counts(f, cap);
      for (i64 n = 1; n <= cap; ++n)
        if (counts[n] > 0) hit[n] = true;
    }
    for (i64 n = 1; n <= cap && found.size() < 11; ++n)
      if (hit[n] && gcd(n, w) == 1) found.push_back(n);
    if (found.size() >= 11 || cap == bound) break;
  }
  if (found.empty())
    throw std::runtime_error(fmt::format("epsilon: no value coprime to {} represented below {}", w, bound));
  const int e = jacobi(-found.front(), w);
  for (i64 n : found)
    if (jacobi(-n, w) != e)
      throw std::runtime_error(fmt::format("epsilon: ({}|{}) and ({}|{}) disagree for the genus of ({})",
                                           -found.front(), w, -n, w, tg.classes.front().to_string()));
  return e;
}

namespace {

i64 class_weight(const TernaryForm& f) {
  const std::uint64_t aut = aut_count(f);
  if (16 % aut != 0)
    throw std::runtime_error(fmt::format("weight 16/|Aut| = 16/{} of ({}) is not an integer", aut, f.to_string()));
  return static_cast<i64>(16 / aut);
}

}  // namespace

i64 mass_direct(const GenusRecord& tg) {
  i64 m = 0;
  for (const auto& f : tg.classes) m += class_weight(f);
  return m;
}

i64 mass_formula(const GenusRecord& tg, i64 S) {
  i64 num = 1;
  i64 den = 1;
  for (i64 p : prime_divisors(S)) {
    num *= p + epsilon(tg, p);
    den *= 2;
  }
  return num / den;
}

i64 sgenus_mass(const SGenus& sg) {
  i64 m = 0;
  for (const auto& tg : sg.tg) m += mass_direct(tg);
  return m;
}

i64 weighted_count(const GenusRecord& tg, i64 M) {
  i64 w = 0;
  for (const auto& f : tg.classes) w += class_weight(f) * static_cast<i64>(repcount(f, M));
  return w;
}

std::vector<i64> weighted_counts(const GenusRecord& tg, i64 max_m) {
  std::vector<i64> out(max_m + 1, 0);
  for (const auto& f : tg.classes) {
    const i64 wt = class_weight(f);
    auto counts = representation_counts(f, max_m);
    for (i64 m = 0; m <= max_m; ++m) out[m] += wt * static_cast<i64>(counts[m]);
  }
  return out;
}

bool orthogonality_check(const SGenus& sg, i64 w) {
  auto it = sg.epsilon.find(w);
  if (it == sg.epsilon.end())
    throw std::invalid_argument(fmt::format("orthogonality_check: {} does not divide {}", w, sg.S));
  int sum = 0;
  for (int e : it->second) sum += e;
  return sum == 0;
}

std::vector<SGenusRow> sgenus_report(const SGenus& sg) {
  std::vector<SGenusRow> rows;
  for (std::size_t i = 0; i < sg.tg.size(); ++i) {
    SGenusRow r;
    r.index = static_cast<int>(i + 1);
    r.classes = sg.tg[i].classes;
    for (i64 p : sg.primes) r.eps.emplace_back(p, sg.epsilon.at(p)[i]);
    r.mass_direct = mass_direct(sg.tg[i]);
    r.mass_formula = mass_formula(sg.tg[i], sg.S);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace thetaforms
