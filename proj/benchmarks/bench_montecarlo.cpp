#include <benchmark/benchmark.h>

#include "udn/montecarlo.hpp"

using namespace udn;

static void BM_SamplePpp(benchmark::State& state) {
    mc::RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(mc::sample_ppp(1e-3, 500.0, rng));
}
BENCHMARK(BM_SamplePpp);

// Trials per second for a fixed radius, h = 20, NLOS.
static void BM_CoverageTrials(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.bs_density = 1e-3;
    cfg.pathloss = PathlossParams{3.0, 4.0, 20.0};
    mc::SimSettings s;
    s.trials = static_cast<std::size_t>(state.range(0));
    s.sim_radius = 400.0;
    s.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(mc::simulate_coverage(cfg, AssociationPolicy::strongest(), s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoverageTrials)->Arg(2048)->Unit(benchmark::kMillisecond);
