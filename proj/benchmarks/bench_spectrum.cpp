// Sturm-sequence bisection vs dense Jacobi for the full spectrum.

#include <benchmark/benchmark.h>

#include "nnchain/spectrum.hpp"

using namespace nnchain;

namespace {

void BM_Bisection(benchmark::State& state) {
    const ChainParams p{static_cast<int>(state.range(0)), 0.0, 1.1, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(eigenvalues_bisection(p, 1e-12).eigenvalues.back());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Bisection)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_DenseJacobi(benchmark::State& state) {
    const ChainParams p{static_cast<int>(state.range(0)), 0.0, 1.1, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(eigenvalues_dense_oracle(p).eigenvalues.back());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseJacobi)->RangeMultiplier(2)->Range(8, 256)->Complexity();

} // namespace

BENCHMARK_MAIN();
