#include <benchmark/benchmark.h>

#include "g3m/analytics.hpp"
#include "g3m/scaling.hpp"

namespace {

g3m::Pool make_pool(g3m::MeanSpec spec, std::size_t n) {
    return g3m::Pool(std::vector<double>(n, 4.0),
                     g3m::Weights(std::vector<double>(n, 1.0 / static_cast<double>(n))),
                     std::move(spec));
}

void BM_solve_output_power(benchmark::State& state) {
    const auto pool = make_pool(g3m::PowerMean{0.5}, static_cast<std::size_t>(state.range(0)));
    std::vector<double> input(pool.size(), 0.0);
    input[0] = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::solve_output(pool, input, pool.size() - 1));
}
BENCHMARK(BM_solve_output_power)->Arg(2)->Arg(8);

void BM_solve_output_geometric(benchmark::State& state) {
    const auto pool = make_pool(g3m::GeometricMean{}, static_cast<std::size_t>(state.range(0)));
    std::vector<double> input(pool.size(), 0.0);
    input[0] = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::solve_output(pool, input, pool.size() - 1));
}
BENCHMARK(BM_solve_output_geometric)->Arg(2)->Arg(8);

void BM_solve_output_fmean(benchmark::State& state) {
    const auto pool =
        make_pool(g3m::FMean{g3m::PowerF{0.5}}, static_cast<std::size_t>(state.range(0)));
    std::vector<double> input(pool.size(), 0.0);
    input[0] = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::solve_output(pool, input, pool.size() - 1));
}
BENCHMARK(BM_solve_output_fmean)->Arg(2)->Arg(8);

void BM_spot_rate(benchmark::State& state) {
    const auto pool = make_pool(g3m::PowerMean{0.5}, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::spot_rate(pool, 0, 1));
}
BENCHMARK(BM_spot_rate);

void BM_run_scaling_default(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::run_scaling(g3m::ScalingConfig{}));
}
BENCHMARK(BM_run_scaling_default);

}  // namespace

BENCHMARK_MAIN();
