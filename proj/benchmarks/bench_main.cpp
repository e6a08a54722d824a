#include <benchmark/benchmark.h>

#include "mqcardinal/fundamental.hpp"
#include "mqcardinal/interpolate.hpp"
#include "mqcardinal/specfun.hpp"
#include "mqcardinal/symbol.hpp"

namespace {

void BM_BesselKScaled(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqc::bessel_k_scaled(1.0, z));
    z = z < 50.0 ? z * 1.01 : 0.1;
  }
}
BENCHMARK(BM_BesselKScaled);

void BM_Lhat(benchmark::State& state) {
  const auto p = mqc::MultiquadricParams::make(0.5, static_cast<double>(state.range(0)), 1);
  double xi = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqc::lhat(p, xi));
    xi = xi < 3.0 ? xi + 0.01 : 0.3;
  }
}
BENCHMARK(BM_Lhat)->Arg(1)->Arg(10);

void BM_Synthesize1D(benchmark::State& state) {
  const auto p = mqc::MultiquadricParams::make(0.5, 1.0, 1);
  mqc::GridSpec g;
  g.M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mqc::synthesize(p, g));
}
BENCHMARK(BM_Synthesize1D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_LambdaFunction(benchmark::State& state) {
  const auto p = mqc::MultiquadricParams::make(0.5, 10.0, 1);
  const auto L = mqc::synthesize(p, mqc::GridSpec::automatic(p));
  for (auto _ : state) benchmark::DoNotOptimize(mqc::lambda_function(L, 0.5));
}
BENCHMARK(BM_LambdaFunction)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
