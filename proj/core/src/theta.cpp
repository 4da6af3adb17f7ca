#include "thetaforms/theta.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "thetaforms/forms.hpp"

namespace thetaforms {

namespace {

using Builder = std::function<Series(std::size_t)>;

const std::map<std::string, Builder, std::less<>>& builtins() {
  static const std::map<std::string, Builder, std::less<>> table = {
      {"phi", [](std::size_t n) { return general_theta(1, 1, n); }},
      {"psi", [](std::size_t n) { return general_theta(1, 3, n); }},
      {"f12", [](std::size_t n) { return general_theta(1, 2, n); }},
      {"f15", [](std::size_t n) { return general_theta(1, 5, n); }},
      {"E", [](std::size_t n) { return euler(n); }},
      // chi(q) = sum q^(4x^2 + 4xz + 6z^2), u(q) = sum q^(3x^2 + 2xy + 5y^2)
      {"chi", [](std::size_t n) { return theta_series(BinaryForm{4, 4, 6}, n); }},
      {"u", [](std::size_t n) { return theta_series(BinaryForm{3, 2, 5}, n); }},
  };
  return table;
}

// Expansions are pure functions of (name, truncation); cache them.
class ExpansionCache {
 public:
  Series get(const std::string& key, std::size_t n, const std::function<Series(std::size_t)>& make) {
    {
      std::lock_guard lock(mu_);
      auto it = entries_.find({key, n});
      if (it != entries_.end()) return it->second;
    }
    Series s = make(n);
    std::lock_guard lock(mu_);
    return entries_.emplace(std::make_pair(key, n), std::move(s)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, std::size_t>, Series> entries_;
};

ExpansionCache& cache() {
  static ExpansionCache c;
  return c;
}

Series reciprocal_euler(std::size_t n) {
  return cache().get("1/E", n, [](std::size_t m) { return invert(euler(m)); });
}

}  // namespace

void EtaQuotient::validate() const {
  if (level < 1) throw std::invalid_argument("eta quotient level must be positive");
  for (auto [delta, r] : exponents)
    if (delta < 1 || level % delta != 0)
      throw std::invalid_argument(fmt::format("eta quotient: {} does not divide level {}", delta, level));
}

i64 EtaQuotient::weighted_sum() const {
  i64 s = 0;
  for (auto [delta, r] : exponents) s += delta * r;
  return s;
}

std::string EtaQuotient::to_string() const {
  std::string out = "[";
  bool first = true;
  for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) {
    if (it->second == 0) continue;
    if (!first) out += ", ";
    first = false;
    out += fmt::format("{}^{}", it->first, it->second);
  }
  return out + "]";
}

Series general_theta(i64 x, i64 y, std::size_t truncation, int sign_x, int sign_y) {
  if (x < 0 || y < 0 || (x == 0 && y == 0))
    throw std::invalid_argument("general_theta: need x, y >= 0 and not both zero");
  std::vector<Integer> c(truncation);
  const i64 limit = static_cast<i64>(truncation);
  // The exponent x n(n-1)/2 + y n(n+1)/2 is convex in n with its minimum in
  // [-1/2, 1/2], so it increases along n = 0, 1, 2, ... and n = -1, -2, ...
  auto add_term = [&](i64 n) {
    const i64 tri_minus = n * (n - 1) / 2;
    const i64 tri_plus = n * (n + 1) / 2;
    const i64 e = x * tri_minus + y * tri_plus;
    if (e >= limit) return false;
    int sign = 1;
    if (sign_x < 0 && (tri_minus % 2 != 0)) sign = -sign;
    if (sign_y < 0 && (tri_plus % 2 != 0)) sign = -sign;
    c[static_cast<std::size_t>(e)] += sign;
    return true;
  };
  for (i64 n = 0; add_term(n); ++n) {
  }
  for (i64 n = -1; add_term(n); --n) {
  }
  return Series(std::move(c));
}

Series euler(std::size_t truncation) {
  return cache().get("E", truncation, [](std::size_t n) {
    // Pentagonal number theorem: E(q) = sum (-1)^k q^(k(3k-1)/2), k in Z.
    std::vector<Integer> c(n);
    const i64 limit = static_cast<i64>(n);
    for (i64 k = 0;; ++k) {
      bool any = false;
      for (i64 kk : {k, -k - 1}) {
        const i64 e = kk * (3 * kk - 1) / 2;
        if (e < limit) {
          c[static_cast<std::size_t>(e)] += (kk % 2 == 0) ? 1 : -1;
          any = true;
        }
      }
      if (!any) break;
    }
    return Series(std::move(c));
  });
}

EtaExpansion expand_eta_quotient(const EtaQuotient& eq, std::size_t truncation) {
  eq.validate();
  const i64 sum = eq.weighted_sum();
  if (sum % 24 != 0)
    throw std::domain_error(fmt::format("eta quotient {}: sum of delta*r_delta = {} is not divisible by 24",
                                        eq.to_string(), sum));
  Series s = Series::one(truncation);
  for (auto [delta, r] : eq.exponents) {
    if (r == 0) continue;
    const Series base = r > 0 ? euler(truncation) : reciprocal_euler(truncation);
    s = mul(s, power(compose_power(base, static_cast<unsigned>(delta)), static_cast<unsigned>(r > 0 ? r : -r)));
  }
  return {sum / 24, std::move(s)};
}

Series named_function(std::string_view name, std::size_t truncation, unsigned power_k, int sign) {
  const auto& table = builtins();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown function '" + std::string(name) + "'");
  if (power_k == 0) throw std::invalid_argument("named_function: power must be >= 1");
  Series base = cache().get(std::string(name), truncation, it->second);
  if (sign < 0) base = alternate_sign(base);
  return compose_power(base, power_k);
}

bool is_named_function(std::string_view name) { return builtins().count(name) > 0; }

const std::vector<std::string>& named_function_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : builtins()) v.push_back(k);
    return v;
  }();
  return names;
}

}  // namespace thetaforms
