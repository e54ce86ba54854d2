#include <benchmark/benchmark.h>

#include "sepvar/combinatorics.hpp"
#include "sepvar/matrixlab.hpp"
#include "sepvar/poset.hpp"
#include "sepvar/report.hpp"

using namespace sepvar;

static void BM_BuildPoset(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const Regime regime = state.range(1) == 2 ? Regime::TwoMatrices : Regime::ThreeOrMore;
    for (auto _ : state) {
        auto poset = Poset::build(p, regime);
        benchmark::DoNotOptimize(poset.edge_count());
    }
    state.counters["elements"] = static_cast<double>(Poset::build(p, regime).size());
}
BENCHMARK(BM_BuildPoset)->ArgsProduct({{4, 5, 6, 7}, {2, 3}})->Unit(benchmark::kMillisecond);

static void BM_ComponentReport(benchmark::State& state) {
    const auto poset = Poset::build(static_cast<int>(state.range(0)), Regime::ThreeOrMore);
    for (auto _ : state) benchmark::DoNotOptimize(component_report(poset, 3).sdim);
}
BENCHMARK(BM_ComponentReport)->DenseRange(4, 7)->Unit(benchmark::kMicrosecond);

static void BM_TCount(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(t_count(k));
}
BENCHMARK(BM_TCount)->Arg(10)->Arg(20);

static void BM_TCountBruteForce(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_t_count(k));
}
BENCHMARK(BM_TCountBruteForce)->DenseRange(6, 9)->Unit(benchmark::kMillisecond);

static void BM_IsSimple(benchmark::State& state) {
    const auto a = random_tuple(3, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(is_simple(a));
}
BENCHMARK(BM_IsSimple)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

static void BM_TraceDiscrepancy(benchmark::State& state) {
    const auto a = random_tuple(3, 4, 1);
    const auto b = random_tuple(3, 4, 2);
    const int len = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(trace_discrepancy(a, b, len));
}
BENCHMARK(BM_TraceDiscrepancy)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_ConstructSupermaximalPair(benchmark::State& state) {
    const auto pi = Composition::make({1, 2, 1});
    const auto sigma = Permutation::make({2, 3, 1});
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(construct_pair(pi, sigma, 3, seed++, true));
}
BENCHMARK(BM_ConstructSupermaximalPair)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
