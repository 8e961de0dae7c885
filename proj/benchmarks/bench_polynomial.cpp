// Cost of the three characteristic-polynomial routes. The closed form and
// the recurrence are O(n) with O(1) memory; the dense elimination is the
// O(n^3) baseline they replace.

#include <benchmark/benchmark.h>

#include "nnchain/chebyshev.hpp"
#include "nnchain/determinant.hpp"

using namespace nnchain;

namespace {

ChainParams params_for(int n) { return ChainParams{n, 0.0, 1.1, 0.4}; }

void BM_MinorSequence(benchmark::State& state) {
    const ChainParams p = params_for(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(minor_sequence(p, 0.37).scaled.back().mantissa);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinorSequence)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_ClosedFormTn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainParams p = params_for(n);
    for (auto _ : state) benchmark::DoNotOptimize(closed_form_tn(p, 0.37, n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosedFormTn)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_GeneralSolutionTn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChainParams p = params_for(n);
    for (auto _ : state) benchmark::DoNotOptimize(general_solution_tn(p, 0.37, n));
}
BENCHMARK(BM_GeneralSolutionTn)->RangeMultiplier(4)->Range(16, 1024);

void BM_DirectDeterminant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetricBandMatrix h = build_hamiltonian(params_for(n));
    for (auto _ : state) benchmark::DoNotOptimize(direct_determinant(h, 0.37));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectDeterminant)->RangeMultiplier(4)->Range(16, 512)->Complexity(benchmark::oNCubed);

} // namespace

BENCHMARK_MAIN();
