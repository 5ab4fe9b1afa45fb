#include "fogran/codec.hpp"
#include "fogran/converse.hpp"
#include "fogran/delivery.hpp"
#include "fogran/oracle.hpp"
#include "fogran/partition.hpp"

#include <benchmark/benchmark.h>

using namespace fogran;

namespace {
const Topology fig3(4, 4, {6, 4, 3, 3}, 20);
const Topology fig5(6, 10, {20, 20, 8, 6, 4, 2}, 70);
const Topology ex1(3, 2, {2, 1, 1}, 6);
}  // namespace

static void BM_ConverseCorners(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(converse_frontier(fig5, Rational(45)));
}
BENCHMARK(BM_ConverseCorners);

static void BM_SymPoints(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(sym_points(fig5, LinkClass::Shared));
}
BENCHMARK(BM_SymPoints);

static void BM_AsymSharedSearch(benchmark::State& st) {
    const int G = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(asym_shared_point(fig5, G, 1));
}
BENCHMARK(BM_AsymSharedSearch)->DenseRange(2, 5);

static void BM_Partitions(benchmark::State& st) {
    const int H = static_cast<int>(st.range(0));
    for (auto _ : st) {
        std::size_t n = 0;
        for (int G = 1; G <= H; ++G) for_each_rgs(H, G, [&](const std::vector<int>&) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_Partitions)->DenseRange(6, 10, 2);

static void BM_Plan(benchmark::State& st) {
    auto s = SchemeDescriptor::sym(fig3, 2, Approach::Side2);
    Demand d{std::vector<int>(20)};
    for (int k = 0; k < 20; ++k) d.d[k] = k + 1;
    for (auto _ : st) benchmark::DoNotOptimize(plan(fig3, s, d));
}
BENCHMARK(BM_Plan);

static void BM_Simulate(benchmark::State& st) {
    auto s = SchemeDescriptor::sym(ex1, 2, Approach::Side2);
    Demand d{{5, 6, 1, 2, 3, 4}};
    for (auto _ : st) benchmark::DoNotOptimize(simulate(ex1, s, d, 1, st.range(0)));
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(192);

static void BM_WorstCase(benchmark::State& st) {
    auto s = SchemeDescriptor::sym(ex1, 2, Approach::Side2);
    for (auto _ : st) benchmark::DoNotOptimize(worst_case_demand(ex1, s, {1'000'000, false}));
}
BENCHMARK(BM_WorstCase)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
