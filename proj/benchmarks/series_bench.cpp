#include <benchmark/benchmark.h>

#include "thetaforms/registry.hpp"
#include "thetaforms/series.hpp"
#include "thetaforms/theta.hpp"
#include "thetaforms/verify.hpp"

using namespace thetaforms;

static void BM_SeriesMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Series a = power(named_function("phi", n), 3), b = power(named_function("psi", n), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

static void BM_InvertEuler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Series e = euler(n);
  for (auto _ : state) benchmark::DoNotOptimize(invert(e));
}
BENCHMARK(BM_InvertEuler)->Arg(500)->Arg(2000);

static void BM_GeneralTheta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(general_theta(14, 70, n));
}
BENCHMARK(BM_GeneralTheta)->Arg(500)->Arg(5000);

static void BM_EtaQuotient(benchmark::State& state) {
  const EtaQuotient q{360, {{30, 2}, {20, 2}, {6, 5}, {4, 4}, {1, 5}, {15, -1}, {12, -2}, {10, -1}, {3, -2}, {2, -12}}};
  for (auto _ : state) benchmark::DoNotOptimize(expand_eta_quotient(q, 500));
}
BENCHMARK(BM_EtaQuotient);

static void BM_SeriesIdentity(benchmark::State& state) {
  const IdentitySpec id = parse_registry(
      "1.14: series: psi(q)*(phi(q)^2 - phi(q^7)^2) = 4*q*psi(q^2)*psi(q^7)*phi(q^7)"
      " + 8*q^2*psi(q^14)*psi(q^3)*phi(q^21) + 8*q^4*psi(q^14)*f(q,q^2)*f(q^7,q^35)\n")[0];
  for (auto _ : state) benchmark::DoNotOptimize(verify_series(id, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SeriesIdentity)->Arg(500)->Unit(benchmark::kMillisecond);
