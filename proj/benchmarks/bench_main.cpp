#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "liftexp/direction_grid.hpp"
#include "liftexp/identify.hpp"
#include "liftexp/lift.hpp"
#include "liftexp/polygon.hpp"
#include "liftexp/sample.hpp"
#include "liftexp/stop_loss.hpp"

namespace {

using namespace liftexp;

BodySample interval_sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const auto uniform = [&eng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    std::vector<ConvexBody> bodies;
    bodies.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = uniform(0.0, 100000.0);
        bodies.push_back(Interval{a, a + uniform(0.0, 2499.0)});
    }
    return BodySample::uniform(std::move(bodies));
}

BodySample disc_sample(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const auto uniform = [&eng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    std::vector<ConvexBody> bodies;
    for (std::size_t i = 0; i < n; ++i)
        bodies.push_back(Ball{Vec{uniform(-3.0, 3.0), uniform(-3.0, 3.0)}, uniform(0.1, 1.0)});
    return BodySample::uniform(std::move(bodies));
}

void BM_StopLossCurve(benchmark::State& state) {
    const BodySample s = interval_sample(static_cast<std::size_t>(state.range(0)), 1);
    const Vec u{1.0};
    for (auto _ : state) benchmark::DoNotOptimize(stop_loss_curve(s, u));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StopLossCurve)->Range(16, 1 << 17)->Complexity(benchmark::oNLogN);

void BM_TrimmedSupportSweep(benchmark::State& state) {
    const BodySample s = disc_sample(64, 2);
    const DirectionGrid grid = DirectionGrid::circle(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        double acc = 0.0;
        for (const Vec& u : grid.vectors()) acc += trimmed_region_support(s, 0.25, u);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_TrimmedSupportSweep)->Range(32, 1024);

void BM_Polygon1D(benchmark::State& state) {
    const BodySample s = interval_sample(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(polygon_1d(s));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Polygon1D)->Range(16, 1 << 17)->Complexity(benchmark::oNLogN);

void BM_HoeffdingSupport(benchmark::State& state) {
    const BodySample s = interval_sample(4096, 4);
    const Vec u{1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(hoeffding_support(s, static_cast<int>(state.range(0)), u));
}
BENCHMARK(BM_HoeffdingSupport)->Arg(2)->Arg(8)->Arg(32);

void BM_ContinuationReconstruct(benchmark::State& state) {
    const BodySample s = disc_sample(4, 5);
    const MarginalOracle oracle =
        circular_marginal_oracle(s, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_continuation(oracle));
}
BENCHMARK(BM_ContinuationReconstruct)->Arg(360)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
