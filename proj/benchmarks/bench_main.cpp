#include <benchmark/benchmark.h>

#include <random>

#include "cliffspec/multivector.hpp"

namespace {

cliffspec::Multivector random_multivector(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    cliffspec::Multivector a(n);
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) a[mask] = dist(rng);
    return a;
}

void bm_geometric_product(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(12345);
    const auto a = random_multivector(n, rng);
    const auto b = random_multivector(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cliffspec::geometric_product(a, b));
    }
}
BENCHMARK(bm_geometric_product)->DenseRange(2, 6);

void bm_mv_inverse(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(777);
    const auto a = random_multivector(n, rng) + cliffspec::Multivector(n, 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cliffspec::mv_inverse(a));
    }
}
BENCHMARK(bm_mv_inverse)->DenseRange(2, 5);

} // namespace

BENCHMARK_MAIN();
