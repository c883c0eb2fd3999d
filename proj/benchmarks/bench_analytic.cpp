#include <cmath>

#include <benchmark/benchmark.h>

#include "udn/analytic.hpp"

using namespace udn;

namespace {
NetworkConfig config(double lambda, LosModel los) {
    NetworkConfig c;
    c.bs_density = lambda;
    c.pathloss = PathlossParams{3.0, 4.0, 20.0};
    c.los_model = los;
    return c;
}
}  // namespace

static void BM_ClosestHeightClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic::coverage_closest_height(1.0, 1e-3, 20.0, 4.0));
}
BENCHMARK(BM_ClosestHeightClosedForm);

static void BM_StrongestHeight(benchmark::State& state) {
    const double lambda = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(analytic::coverage_strongest_height(1.0, lambda, 20.0, 4.0));
}
BENCHMARK(BM_StrongestHeight)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);

static void BM_GeneralBuildings(benchmark::State& state) {
    const auto policy = state.range(0) == 0 ? AssociationPolicy::closest() : AssociationPolicy::strongest();
    const auto cfg = config(1e-3, BuildingsBlockage{0.1, 10.0});
    for (auto _ : state) benchmark::DoNotOptimize(analytic::coverage_general(cfg, policy));
}
BENCHMARK(BM_GeneralBuildings)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_InterferenceBound(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic::expected_interference_bound(1e-3, 20.0, 4.0).value);
}
BENCHMARK(BM_InterferenceBound)->Unit(benchmark::kMillisecond);
