#include <benchmark/benchmark.h>

#include "lll/basis.hpp"
#include "lll/eigensolver.hpp"
#include "lll/gp_lll.hpp"
#include "lll/meanfield.hpp"
#include "lll/operators.hpp"
#include "lll/plasma_mc.hpp"

using namespace lll;

static void BM_EnumerateSector(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int l = static_cast<int>(state.range(1));
    for (auto _ : state) {
        SectorBasis basis(n, l);
        benchmark::DoNotOptimize(basis.size());
    }
}
BENCHMARK(BM_EnumerateSector)->Args({6, 30})->Args({8, 56});

static void BM_AssembleInteraction(benchmark::State& state) {
    const SectorBasis basis(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_interaction(basis).dim());
    state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_AssembleInteraction)->Args({5, 20})->Args({6, 30})->Args({7, 42})->Unit(benchmark::kMillisecond);

static void BM_LowestEigenpairs(benchmark::State& state) {
    const SectorBasis basis(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto op = assemble_interaction(basis);
    EigenOptions options;
    options.method = EigenMethod::lanczos;
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(op, 4, options).front().value);
    state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_LowestEigenpairs)->Args({6, 24})->Args({7, 36})->Unit(benchmark::kMillisecond);

static void BM_MetropolisSweeps(benchmark::State& state) {
    MetropolisOptions options;
    options.particles = static_cast<int>(state.range(0));
    options.m = 0;
    options.sweeps = 200;
    options.burn_in = 100;
    for (auto _ : state) benchmark::DoNotOptimize(run_metropolis(options).positions.size());
    state.SetItemsProcessed(state.iterations() * options.sweeps * options.particles);
}
BENCHMARK(BM_MetropolisSweeps)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_MeanField(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto grid = RadialGrid::for_plasma(64, m);
    for (auto _ : state) benchmark::DoNotOptimize(minimize_mf(64, m, grid).profile.energy.total());
}
BENCHMARK(BM_MeanField)->Arg(0)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_MinimizeGP(benchmark::State& state) {
    GPOptions options;
    options.restarts = 4;
    const double omega = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(minimize_gp(omega, 10.0, options).energy);
}
BENCHMARK(BM_MinimizeGP)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
