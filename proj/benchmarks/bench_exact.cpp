#include <benchmark/benchmark.h>

#include "vortexq/hilbert.hpp"
#include "vortexq/obstruct.hpp"
#include "vortexq/symcoh.hpp"

using namespace vortexq;

namespace {

void BM_RootOracle(benchmark::State& state) {
  const long r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(obstruct::chern_root_oracle(r, r / 2).equal);
}
BENCHMARK(BM_RootOracle)->DenseRange(4, 8, 2);

void BM_PrequantumCheck(benchmark::State& state) {
  const auto q = vortexpde::QuantizationSpec::from_level(state.range(0), 5, Rational(12), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(symcoh::prequantum_class_check(q).holds);
}
BENCHMARK(BM_PrequantumCheck)->Arg(2)->Arg(20);

void BM_WedgeStates(benchmark::State& state) {
  for (auto _ : state) {
    hilbert::WedgeStates s(20, 10);
    long n = 0;
    while (s.next()) ++n;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_WedgeStates)->Unit(benchmark::kMillisecond);

}  // namespace
