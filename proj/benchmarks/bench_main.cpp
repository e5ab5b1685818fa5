#include <benchmark/benchmark.h>

#include "bbg/enumerate.hpp"
#include "bbg/sampler.hpp"
#include "bbg/spectra.hpp"
#include "bbg/switching.hpp"

using namespace bbg;

namespace {

void BM_EnumerateFamily(benchmark::State& state) {
    const DegreeParams p{5, 5, 2, 2};
    for (auto _ : state) {
        GraphFamily fam = enumerate_family(p);
        benchmark::DoNotOptimize(fam.size());
    }
}
BENCHMARK(BM_EnumerateFamily);

void BM_SwitchChainSteps(benchmark::State& state) {
    const DegreeParams p{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                         4, 4};
    SwitchChain chain(initial_graph(p));
    Rng rng = make_rng(1);
    for (auto _ : state)
        for (int i = 0; i < 1000; ++i) benchmark::DoNotOptimize(chain.step(rng));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SwitchChainSteps)->Arg(50)->Arg(500);

void BM_Sigma2Deflated(benchmark::State& state) {
    BiregularGraph g =
        sample_uniform(DegreeParams{static_cast<int>(state.range(0)),
                                    static_cast<int>(state.range(0)), 4, 4},
                       ChainConfig{0, 7, 0});
    for (auto _ : state) benchmark::DoNotOptimize(sigma2_deflated(g, 1e-8));
}
BENCHMARK(BM_Sigma2Deflated)->Arg(50)->Arg(100);

void BM_CountSwitchings(benchmark::State& state) {
    BiregularGraph g = sample_uniform(DegreeParams{200, 200, 4, 4}, ChainConfig{0, 9, 0});
    for (auto _ : state)
        benchmark::DoNotOptimize(count_switchings(g, Anchor{0, -1, 0}, SwitchingKind::Forward));
}
BENCHMARK(BM_CountSwitchings);

}  // namespace

BENCHMARK_MAIN();
