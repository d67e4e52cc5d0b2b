#include <benchmark/benchmark.h>

#include "vortexq/zetadet.hpp"

using namespace vortexq;

namespace {

const geometry::TorusSpec& torus() {
  static const auto spec = geometry::build_torus({0.3, 1.2}, 1.0, 32);
  return spec;
}

void BM_ZetaMellin(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zetadet::zeta_route_mellin(torus()).zeta_prime);
}
BENCHMARK(BM_ZetaMellin)->Unit(benchmark::kMicrosecond);

void BM_ZetaCutoff(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zetadet::zeta_route_cutoff(torus()).zeta_prime);
}
BENCHMARK(BM_ZetaCutoff)->Unit(benchmark::kMillisecond);

void BM_ZetaValue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zetadet::zeta_value(torus(), 2.0));
}
BENCHMARK(BM_ZetaValue)->Unit(benchmark::kMicrosecond);

void BM_DirectSum(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zetadet::direct_partial_sum(torus(), 2.0, radius).value);
}
BENCHMARK(BM_DirectSum)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_Poisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = geometry::build_torus({0, 1}, 1.0, n);
  geometry::ScalarField f(spec);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) f(i, j) = (i % 7) - (j % 5) * 0.5;
  }
  f -= geometry::ScalarField(spec, geometry::mean(f));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::solve_poisson(spec, f)(0, 0));
}
BENCHMARK(BM_Poisson)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
