#include "onofri/remainder.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace onofri;

static void BM_two_sided_check(benchmark::State& state) {
    const int n = int(state.range(0));
    const Dimension dim(n);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<std::vector<double>> xs(256, std::vector<double>(n));
    std::vector<std::vector<double>> ys(256, std::vector<double>(n));
    for (auto& v : xs)
        for (auto& c : v) c = dist(rng);
    for (auto& v : ys)
        for (auto& c : v) c = dist(rng);
    size_t i = 0;
    for (auto _ : state) {
        const auto chk = check_two_sided_bound(dim, xs[i & 255], ys[i & 255]);
        benchmark::DoNotOptimize(chk.pass);
        ++i;
    }
}
BENCHMARK(BM_two_sided_check)->Arg(2)->Arg(4)->Arg(6);

static void BM_radial_remainder(benchmark::State& state) {
    const Dimension dim(4);
    double a = -1.7, b = 0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(remainder_radial(dim, {a, b}));
        b = -b;
    }
}
BENCHMARK(BM_radial_remainder);

BENCHMARK_MAIN();
