#include "onofri/geometry.hpp"
#include "onofri/numeric.hpp"
#include "onofri/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace onofri;

static void BM_measure_normalization(benchmark::State& state) {
    const Dimension dim(int(state.range(0)));
    for (auto _ : state) {
        auto res = integrate_radial(dim, [&](double r) { return mu_density(dim, r); });
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_measure_normalization)->Arg(2)->Arg(4)->Arg(6);

static void BM_smooth_panel(benchmark::State& state) {
    for (auto _ : state) {
        auto res = integrate([](double x) { return std::exp(-x) * std::cos(3.0 * x); }, 0.0, 5.0);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_smooth_panel);

static void BM_log_weight_tail(benchmark::State& state) {
    const Dimension dim(3);
    for (auto _ : state) {
        auto res = integrate_to_infinity(
            [&](double rho) {
                const double t = real_pow(rho, 1.5);
                return 9.0 * rho * rho * std::log1p(t) / ((1.0 + t) * (1.0 + t) * (1.0 + t));
            },
            0.0);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_log_weight_tail);
