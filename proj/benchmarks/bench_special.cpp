#include <cmath>

#include <benchmark/benchmark.h>

#include "udn/special_functions.hpp"

using namespace udn::special;

static void BM_Psi(benchmark::State& state) {
    const double z = std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(psi(z, 3.0));
}
BENCHMARK(BM_Psi)->DenseRange(-3, 9, 3);

static void BM_ExpIntegral(benchmark::State& state) {
    const double z = 0.01 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(exp_integral(1.5, z));
}
BENCHMARK(BM_ExpIntegral)->Arg(1)->Arg(50)->Arg(500);

static void BM_TricomiU(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tricomi_u(2.0, 2.0 - static_cast<double>(state.range(0)), 1.3));
}
BENCHMARK(BM_TricomiU)->Arg(1)->Arg(100)->Arg(10000);
BENCHMARK_MAIN();
