#include <benchmark/benchmark.h>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/exact.hpp"
#include "gbpwalk/paths.hpp"
#include "gbpwalk/pde.hpp"
#include "gbpwalk/renewal.hpp"
#include "gbpwalk/specfun.hpp"

using namespace gbp;

namespace {

const KernelSpec kTempered = TemperedPower{0.4, 0.5, 1.0};

void BM_Enumerate(benchmark::State& state) {
    const Window w(WindowSpec{kTempered, state.range(0), 1.0, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_distribution(w));
}
BENCHMARK(BM_Enumerate)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_RenewalSample(benchmark::State& state) {
    const Window w(WindowSpec{kTempered, state.range(0), 1.0, 0.5});
    const RenewalTables t = build_renewal_tables(w);
    std::uint64_t i = 0;
    for (auto _ : state) {
        CounterRng rng = substream(7, i++, StreamDomain::gbp_path);
        benchmark::DoNotOptimize(sample_gbp_window(w, t, rng));
    }
}
BENCHMARK(BM_RenewalSample)->RangeMultiplier(10)->Range(100, 100000);

void BM_ScaledPaths(benchmark::State& state) {
    const Window w(WindowSpec{kTempered, 1000, 1.0, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(scaled_walk_paths(w, {0.5, 1.0}, state.range(0), 11, 1));
}
BENCHMARK(BM_ScaledPaths)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ExactWalkMoment(benchmark::State& state) {
    const Window w(WindowSpec{kTempered, state.range(0), 1.0, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(exact_walk_moment(w, 1.0, 3));
}
BENCHMARK(BM_ExactWalkMoment)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MittagLeffler(benchmark::State& state) {
    double z = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mittag_leffler(0.6, 1.0, z));
        z = z < 2.0 ? z + 0.01 : -2.0;
    }
}
BENCHMARK(BM_MittagLeffler);

void BM_MgfStar(benchmark::State& state) {
    const EmlParams p{0.6, 0.8, 0.5, 1.0, std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(mgf_star(p, -1.0, 0.7));
}
BENCHMARK(BM_MgfStar);

void BM_MomentX(benchmark::State& state) {
    const EmlParams p{0.6, 0.8, 0.5, 1.0, std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(moment_X(p, static_cast<int>(state.range(0)), 0.7));
}
BENCHMARK(BM_MomentX)->DenseRange(1, 4);

void BM_PdeResidual(benchmark::State& state) {
    const EmlParams p{0.5, 0.0, 0.5, 1.0, std::nullopt};
    const PdeCheckSpec spec{PdeCase::ml_star, {0.2, 0.6, 1.0}, 0.5, 1.0, 0.05, static_cast<int>(state.range(0)), 1e-4};
    for (auto _ : state) benchmark::DoNotOptimize(pde_residual(p, spec));
}
BENCHMARK(BM_PdeResidual)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
