#include <benchmark/benchmark.h>

#include <numbers>

#include "vortexq/modulimetric.hpp"

using namespace vortexq;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_SolveVortex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = geometry::build_torus({0, 1}, 1.0, n);
  const auto q = vortexpde::QuantizationSpec::from_tau(1, 1, 8 * kPi, 1.0);
  const auto divisor = vortexpde::make_divisor(spec, {spec.from_lattice(0.3, 0.4)});
  for (auto _ : state) benchmark::DoNotOptimize(vortexpde::solve_vortex(spec, q, divisor).residual_norm);
  state.SetComplexityN(static_cast<long>(n) * n);
}
BENCHMARK(BM_SolveVortex)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_OmegaRoutes(benchmark::State& state) {
  const auto spec = geometry::build_torus({0, 1}, 1.0, 64);
  const auto q = vortexpde::QuantizationSpec::from_tau(1, 2, 12 * kPi, 1.0);
  const auto point = vortexpde::make_divisor(spec, {spec.from_lattice(0.2, 0.3), spec.from_lattice(0.6, 0.7)});
  const bool fiber = state.range(0) == 1;
  for (auto _ : state) {
    const auto s = fiber ? modulimetric::omega_fiberint(spec, q, point) : modulimetric::omega_deformation(spec, q, point);
    benchmark::DoNotOptimize(s.omega[0][1]);
  }
  state.SetLabel(fiber ? "fiber integration" : "deformation");
}
BENCHMARK(BM_OmegaRoutes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
