#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "g3m/means.hpp"

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    std::vector<double> v(n);
    for (double& e : v) e = dist(gen);
    return v;
}

g3m::Weights uniform_weights(std::size_t n) {
    return g3m::Weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void BM_generalized_mean(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_values(n, 1);
    const auto w = uniform_weights(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::generalized_mean(x, w, 0.5));
}
BENCHMARK(BM_generalized_mean)->Arg(2)->Arg(8)->Arg(64);

// the log-domain branch taken for tiny exponents
void BM_generalized_mean_small_p(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_values(n, 2);
    const auto w = uniform_weights(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::generalized_mean(x, w, 1e-6));
}
BENCHMARK(BM_generalized_mean_small_p)->Arg(2)->Arg(8)->Arg(64);

void BM_geometric_mean(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_values(n, 3);
    const auto w = uniform_weights(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::geometric_mean(x, w));
}
BENCHMARK(BM_geometric_mean)->Arg(2)->Arg(8)->Arg(64);

void BM_f_mean_power(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_values(n, 4);
    const auto w = uniform_weights(n);
    const g3m::FKind f = g3m::PowerF{0.5};
    for (auto _ : state)
        benchmark::DoNotOptimize(g3m::f_mean(x, w, f));
}
BENCHMARK(BM_f_mean_power)->Arg(2)->Arg(8)->Arg(64);

}  // namespace
