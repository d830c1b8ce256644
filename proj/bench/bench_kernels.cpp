// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "laver/conjectures.hpp"
#include "laver/identities.hpp"
#include "laver/omega.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

const laver::TableTower& tower() {
    static const laver::TableTower t = laver::TableTower::build(13);
    return t;
}

int threads(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void BM_BuildTable(benchmark::State& state) {
    for (auto _ : state) {
        auto t = laver::build_table(static_cast<laver::Rank>(state.range(0)));
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_BuildTable)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_VerifyUh(benchmark::State& state) {
    laver::SweepOptions options;
    options.workers = threads(state);
    for (auto _ : state) {
        auto r = laver::verify(laver::Check::uh, 12, tower(), options);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_VerifyUh)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VerifyTh(benchmark::State& state) {
    laver::SweepOptions options;
    options.workers = threads(state);
    for (auto _ : state) {
        auto r = laver::verify(laver::Check::th, 12, tower(), options);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_VerifyTh)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LdSampled(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(laver::ld_violations_sampled(tower().at(12), 1'000'000, 7, threads(state)));
    }
}
BENCHMARK(BM_LdSampled)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EnumerateBelow12(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(laver::enumerate_below(12, tower(), threads(state)));
    }
}
BENCHMARK(BM_EnumerateBelow12)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
