#include "thetaforms/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "thetaforms/genus.hpp"

namespace thetaforms {

namespace {

// Shared memo tables; values are computed outside the lock.
template <class K, class V>
class Memo {
 public:
  template <class F>
  V get(const K& key, F compute) {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    V v = compute();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<K, V> map_;
};

using CountTable = std::shared_ptr<const std::vector<std::uint64_t>>;
using WeightTable = std::shared_ptr<const std::vector<i64>>;

Memo<std::pair<TernaryForm, i64>, CountTable>& count_memo() {
  static Memo<std::pair<TernaryForm, i64>, CountTable> m;
  return m;
}
Memo<TernaryForm, std::uint64_t>& aut_memo() {
  static Memo<TernaryForm, std::uint64_t> m;
  return m;
}
Memo<i64, std::shared_ptr<const SGenus>>& sgenus_memo() {
  static Memo<i64, std::shared_ptr<const SGenus>> m;
  return m;
}
Memo<std::tuple<i64, i64, i64>, WeightTable>& weight_memo() {
  static Memo<std::tuple<i64, i64, i64>, WeightTable> m;
  return m;
}
Memo<std::pair<TernaryForm, i64>, int>& form_eps_memo() {
  static Memo<std::pair<TernaryForm, i64>, int> m;
  return m;
}

std::shared_ptr<const SGenus> sgenus(i64 S) {
  return sgenus_memo().get(S, [&] { return std::make_shared<const SGenus>(build_sgenus(S)); });
}

// Everything a ternary entry needs, resolved once for a given Mmax.
class TernaryContext {
 public:
  TernaryContext(const IdentitySpec& id, i64 mmax) : mmax_(std::max<i64>(mmax, 1)) {
    for (const auto* side : {&id.tlhs, &id.trhs})
      for (const TernaryTerm& t : *side) prepare(t);
  }

  Rational side(const std::vector<TernaryTerm>& terms, i64 M) const {
    Rational total = 0;
    for (const TernaryTerm& t : terms) total += term(t, M);
    return total;
  }

 private:
  void prepare(const TernaryTerm& t) {
    for (const EpsRef& e : t.eps) eps_value(e);
    if (!t.count) return;
    const CountTerm& c = *t.count;
    switch (c.kind) {
      case CountTerm::Kind::count:
      case CountTerm::Kind::weighted:
        counts_[c.form] = count_memo().get({c.form, mmax_}, [&] {
          return std::make_shared<const std::vector<std::uint64_t>>(representation_counts(c.form, mmax_));
        });
        if (c.kind == CountTerm::Kind::weighted) auts_[c.form] = aut_memo().get(c.form, [&] { return aut_count(c.form); });
        break;
      case CountTerm::Kind::sgenus:
        weights_[{c.S, c.index}] = weight_memo().get({c.S, c.index, mmax_}, [&] {
          auto sg = sgenus(c.S);
          return std::make_shared<const std::vector<i64>>(
              weighted_counts(sg->tg.at(static_cast<std::size_t>(c.index - 1)), mmax_));
        });
        break;
    }
  }

  int eps_value(const EpsRef& e) const {
    if (e.by_form)
      return form_eps_memo().get({e.form, e.w}, [&] { return epsilon(genus_of(e.form), e.w); });
    auto sg = sgenus(e.S);
    return sg->epsilon.at(e.w).at(static_cast<std::size_t>(e.index - 1));
  }

  Rational term(const TernaryTerm& t, i64 M) const {
    Rational v = t.coefficient;
    for (const EpsRef& e : t.eps) v *= eps_value(e);
    if (!t.count) return v;
    const CountTerm& c = *t.count;
    if (M % c.divisor != 0) return 0;
    const i64 arg = M / c.divisor;
    const auto idx = static_cast<std::size_t>(arg);
    switch (c.kind) {
      case CountTerm::Kind::count: {
        const auto& r = *counts_.at(c.form);
        return v * Integer(static_cast<unsigned long>(r[idx]));
      }
      case CountTerm::Kind::weighted: {
        const auto& r = *counts_.at(c.form);
        Rational w(Integer(static_cast<unsigned long>(r[idx])) * 16,
                   Integer(static_cast<unsigned long>(auts_.at(c.form))));
        w.canonicalize();
        return v * w;
      }
      case CountTerm::Kind::sgenus:
        return v * Integer(static_cast<long>((*weights_.at({c.S, c.index}))[idx]));
    }
    return 0;
  }

  i64 mmax_;
  std::map<TernaryForm, CountTable> counts_;
  std::map<TernaryForm, std::uint64_t> auts_;
  std::map<std::pair<i64, i64>, WeightTable> weights_;
};

bool conditions_hold(const IdentitySpec& id, i64 M) {
  return std::all_of(id.conditions.begin(), id.conditions.end(), [&](const Condition& c) { return c.holds(M); });
}

// Sums of coef * alpha^x * beta^y with coefficients in Q(p).
using Monomials = std::map<std::pair<Rational, Rational>, RationalFunction>;

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Monomials mono_mul(const Monomials& a, const Monomials& b) {
  Monomials out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      auto key = std::make_pair(Rational(ka.first + kb.first), Rational(ka.second + kb.second));
      out[key] = out[key] + va * vb;
    }
  return out;
}

Monomials mono_add(Monomials a, const Monomials& b, int sign) {
  for (const auto& [k, v] : b) a[k] = sign > 0 ? a[k] + v : a[k] - v;
  return a;
}

Monomials mono_eval(const ModExpr& e) {
  using K = ModExpr::Kind;
  const std::pair<Rational, Rational> unit{0, 0};
  switch (e.kind) {
    case K::integer: return {{unit, RationalFunction::constant(Rational(e.value))}};
    case K::m: return {{unit, param_m()}};
    case K::alpha: return {{{e.exponent, 0}, RationalFunction::constant(1)}};
    case K::beta: return {{{0, e.exponent}, RationalFunction::constant(1)}};
    case K::add: return mono_add(mono_eval(*e.kids[0]), mono_eval(*e.kids[1]), 1);
    case K::sub: return mono_add(mono_eval(*e.kids[0]), mono_eval(*e.kids[1]), -1);
    case K::neg: return mono_add({}, mono_eval(*e.kids[0]), -1);
    case K::mul: return mono_mul(mono_eval(*e.kids[0]), mono_eval(*e.kids[1]));
    case K::div: {
      Monomials d = mono_eval(*e.kids[1]);
      std::erase_if(d, [](const auto& kv) { return kv.second.is_zero(); });
      if (d.size() != 1) throw Unsupported("division by a sum of monomials");
      const auto& [k, v] = *d.begin();
      Monomials inv{{{-k.first, -k.second}, RationalFunction::constant(1) / v}};
      return mono_mul(mono_eval(*e.kids[0]), inv);
    }
    case K::pow: {
      const Monomials base = mono_eval(*e.kids[0]);
      if (e.exponent.get_den() != 1) {
        // Only a bare monomial alpha^x beta^y may carry a fractional power.
        if (base.size() != 1 || !(base.begin()->second == RationalFunction::constant(1)))
          throw Unsupported("fractional power of an expression that is not a monomial in alpha, beta");
        const auto& k = base.begin()->first;
        return {{{k.first * e.exponent, k.second * e.exponent}, RationalFunction::constant(1)}};
      }
      const long k = e.exponent.get_num().get_si();
      if (k < 0) throw Unsupported("negative power of a sum");
      Monomials out{{unit, RationalFunction::constant(1)}};
      for (long i = 0; i < k; ++i) out = mono_mul(out, base);
      return out;
    }
  }
  throw std::logic_error("mono_eval: bad node");
}

// Each monomial alpha^x beta^y becomes the 8th root of alpha^(8x) beta^(8y).
RationalFunction substitute(const Monomials& terms) {
  RationalFunction total;
  for (const auto& [k, coef] : terms) {
    if (coef.is_zero()) continue;
    const Rational x8 = k.first * 8, y8 = k.second * 8;
    if (x8.get_den() != 1 || y8.get_den() != 1)
      throw Unsupported(fmt::format("exponent ({}, {}) is not a multiple of 1/8", k.first.get_str(), k.second.get_str()));
    const RationalFunction radicand = pow(param_alpha(), static_cast<int>(x8.get_num().get_si())) *
                                      pow(param_beta(), static_cast<int>(y8.get_num().get_si()));
    RationalFunction root;
    try {
      root = rational_root(radicand, 8);
    } catch (const std::domain_error& err) {
      throw Unsupported(fmt::format("radicand {} is not an 8th power in the span of p, 2+p, 1+2p ({})",
                                    radicand.to_string(), err.what()));
    }
    total = total + coef * root;
  }
  return total;
}

}  // namespace

SeriesCheck verify_series(const IdentitySpec& id, std::size_t truncation) {
  if (id.mode != Mode::series && id.mode != Mode::sift)
    throw std::invalid_argument("verify_series: '" + id.name + "' is a " + mode_name(id.mode) + " entry");
  const Series l = evaluate(*id.lhs, truncation);
  const Series r = evaluate(*id.rhs, truncation);
  SeriesCheck out;
  out.mismatch = first_mismatch(l, r);
  out.pass = !out.mismatch;
  if (out.mismatch) {
    out.lhs = l[*out.mismatch];
    out.rhs = r[*out.mismatch];
  }
  return out;
}

std::pair<Rational, Rational> evaluate_ternary(const IdentitySpec& id, i64 M) {
  if (id.mode != Mode::ternary) throw std::invalid_argument("evaluate_ternary: '" + id.name + "' is not ternary");
  if (M < 1) throw std::invalid_argument("evaluate_ternary: M must be positive");
  TernaryContext ctx(id, M);
  return {ctx.side(id.tlhs, M), ctx.side(id.trhs, M)};
}

TernaryCheck verify_ternary(const IdentitySpec& id, i64 mmax) {
  if (id.mode != Mode::ternary) throw std::invalid_argument("verify_ternary: '" + id.name + "' is not ternary");
  TernaryContext ctx(id, mmax);
  TernaryCheck out;
  for (i64 M = 1; M <= mmax; ++M) {
    if (!conditions_hold(id, M)) continue;
    ++out.checked;
    Rational l = ctx.side(id.tlhs, M), r = ctx.side(id.trhs, M);
    if (l != r) {
      out.violation = M;
      out.lhs = l;
      out.rhs = r;
      return out;
    }
  }
  out.pass = true;
  return out;
}

PositivityCheck scan_positivity(const Series& s) {
  PositivityCheck out;
  for (std::size_t n = 0; n < s.truncation(); ++n) {
    if (s[n] < 0) {
      out.witness = n;
      out.value = s[n];
      return out;
    }
  }
  out.nonnegative = true;
  return out;
}

PositivityCheck verify_positivity(const IdentitySpec& id, std::size_t limit) {
  if (id.mode != Mode::positivity) throw std::invalid_argument("verify_positivity: '" + id.name + "' is not positivity");
  return scan_positivity(evaluate(*id.lhs, limit));
}

Series positivity_series(i64 S, std::size_t limit) {
  if (S < 2) throw std::invalid_argument("positivity_series: S must be at least 2");
  const Series phi = named_function("phi", limit);
  return named_function("psi", limit) *
         (power(phi, 2) - power(named_function("phi", limit, static_cast<unsigned>(S)), 2));
}

ModeqCheck verify_modeq3(const IdentitySpec& id) {
  if (id.mode != Mode::modeq3) throw std::invalid_argument("verify_modeq3: '" + id.name + "' is not modeq3");
  ModeqCheck out;
  if (auto d = id.options.find("degree"); d != id.options.end() && d->second != "3") {
    out.status = ModeqStatus::unsupported;
    out.message = "unsupported by parametrization: no rational parametrization for degree " + d->second;
    return out;
  }
  try {
    out.lhs = substitute(mono_eval(*id.mlhs));
    out.rhs = substitute(mono_eval(*id.mrhs));
  } catch (const Unsupported& e) {
    out.status = ModeqStatus::unsupported;
    out.message = std::string("unsupported by parametrization: ") + e.what();
    return out;
  }
  out.status = out.lhs == out.rhs ? ModeqStatus::pass : ModeqStatus::refuted;
  out.message = fmt::format("lhs = {}; rhs = {}", out.lhs.to_string(), out.rhs.to_string());
  return out;
}

Combination eta_combination(const IdentitySpec& id) {
  if (id.mode != Mode::eta_valence) throw std::invalid_argument("eta_combination: '" + id.name + "' is not eta-valence");
  Combination c;
  const auto it = id.options.find("level");
  if (it == id.options.end()) throw std::invalid_argument("eta_combination: missing level");
  c.level = std::stoll(it->second);
  auto take = [&](const std::vector<EtaTerm>& side, int sign) {
    for (const EtaTerm& t : side) {
      if (t.quotient) {
        EtaQuotient q = *t.quotient;
        q.level = c.level;
        c.terms.emplace_back(t.coefficient * sign, q);
      } else {
        c.constant += t.coefficient * sign;
      }
    }
  };
  take(id.elhs, 1);
  take(id.erhs, -1);
  return c;
}

ProofCertificate verify_eta(const IdentitySpec& id) { return prove(eta_combination(id)); }

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unsupported: return "unsupported";
    case Status::error: return "error";
  }
  return "?";
}

ReportRow verify_entry(const IdentitySpec& id, const VerifyConfig& config, const std::vector<IdentitySpec>& all) {
  ReportRow row;
  row.name = id.name;
  row.mode = id.mode;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id.mode) {
      case Mode::series:
      case Mode::sift: {
        row.params = fmt::format("N={}", config.truncation);
        const SeriesCheck c = verify_series(id, config.truncation);
        row.status = c.pass ? Status::pass : Status::fail;
        if (!c.pass) row.witness = fmt::format("q^{}: {} != {}", *c.mismatch, c.lhs.get_str(), c.rhs.get_str());
        break;
      }
      case Mode::ternary: {
        row.params = fmt::format("Mmax={}", config.mmax);
        const TernaryCheck c = verify_ternary(id, config.mmax);
        row.status = c.pass ? Status::pass : Status::fail;
        if (c.pass) row.witness = fmt::format("{} values of M", c.checked);
        else row.witness = fmt::format("M={}: {} != {}", *c.violation, c.lhs.get_str(), c.rhs.get_str());
        break;
      }
      case Mode::positivity: {
        row.params = fmt::format("limit={}", config.limit);
        const bool control = id.options.count("expect") && id.options.at("expect") == "negative";
        const PositivityCheck c = verify_positivity(id, config.limit);
        row.status = c.nonnegative != control ? Status::pass : Status::fail;
        if (c.witness) row.witness = fmt::format("q^{}: {}", *c.witness, c.value.get_str());
        break;
      }
      case Mode::modeq3: {
        const ModeqCheck c = verify_modeq3(id);
        row.status = c.status == ModeqStatus::pass      ? Status::pass
                     : c.status == ModeqStatus::refuted ? Status::fail
                                                        : Status::unsupported;
        row.witness = c.message;
        row.params = "exact";
        if (auto link = id.options.find("theta"); link != id.options.end()) {
          row.params = fmt::format("exact; {} at N={}", link->second, config.modeq_truncation);
          auto it = std::find_if(all.begin(), all.end(), [&](const IdentitySpec& s) { return s.name == link->second; });
          if (it == all.end()) {
            row.status = Status::error;
            row.witness = "linked identity '" + link->second + "' not found";
          } else {
            const SeriesCheck s = verify_series(*it, config.modeq_truncation);
            if (!s.pass) {
              row.status = Status::fail;
              row.witness = fmt::format("theta form {} fails at q^{}", it->name, *s.mismatch);
            } else {
              row.witness += fmt::format("; theta form {} holds", it->name);
            }
          }
        }
        break;
      }
      case Mode::eta_valence: {
        const ProofCertificate cert = verify_eta(id);
        row.params = fmt::format("level={}", cert.level);
        row.status = cert.verdict == Verdict::proved ? Status::pass : Status::fail;
        row.witness = fmt::format("cusps={} B={} {}", cert.cusp_count, cert.bound, verdict_name(cert.verdict));
        if (cert.refuted_at) row.witness += fmt::format(" at q^{}", *cert.refuted_at);
        break;
      }
    }
  } catch (const std::exception& e) {
    row.status = Status::error;
    row.witness = e.what();
  }
  row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

bool name_less(std::string_view a, std::string_view b) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && digit(a[i2])) ++i2;
      while (j2 < b.size() && digit(b[j2])) ++j2;
      std::string_view x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
      while (x.size() > 1 && x.front() == '0') x.remove_prefix(1);
      while (y.size() > 1 && y.front() == '0') y.remove_prefix(1);
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

SuiteReport run_suite(const std::vector<IdentitySpec>& specs, const VerifyConfig& config,
                      const std::vector<IdentitySpec>* all) {
  const auto& links = all ? *all : specs;
  SuiteReport report;
  report.rows.resize(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) report.rows[i] = verify_entry(specs[i], config, links);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(specs.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return name_less(a.name, b.name); });
  for (const ReportRow& r : report.rows) {
    if (r.status == Status::pass) ++report.passed;
    else if (r.status == Status::unsupported) ++report.unsupported;
    else ++report.failed;
  }
  return report;
}

}  // namespace thetaforms
