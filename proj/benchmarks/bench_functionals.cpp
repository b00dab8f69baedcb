#include "onofri/functionals.hpp"

#include <benchmark/benchmark.h>

using namespace onofri;

static void BM_ball_functional_sharp_family(benchmark::State& state) {
    const Dimension dim(int(state.range(0)));
    const Profile w = minimizing_family(dim, 10.0);
    for (auto _ : state) {
        auto rep = cc_J(dim, w);
        benchmark::DoNotOptimize(rep.value);
    }
}
BENCHMARK(BM_ball_functional_sharp_family)->Arg(2)->Arg(3)->Arg(4);

static void BM_onofri_on_hat(benchmark::State& state) {
    const Dimension dim(3);
    const Profile hat = sampled_profile({0.0, 0.7, 2.0}, {0.0, 1.3, 0.0});
    for (auto _ : state) {
        auto rep = onofri_I(dim, hat);
        benchmark::DoNotOptimize(rep.value);
    }
}
BENCHMARK(BM_onofri_on_hat);

static void BM_weighted_norm_counterexample(benchmark::State& state) {
    const Dimension dim(4);
    const Profile u = counterexample_profile(int(state.range(0)));
    for (auto _ : state) {
        auto norm = w_mu_norm(dim, u);
        benchmark::DoNotOptimize(norm.total);
    }
}
BENCHMARK(BM_weighted_norm_counterexample)->Arg(20)->Arg(100);

static void BM_gradient_20_nodes(benchmark::State& state) {
    const Dimension dim(2);
    std::vector<double> nodes{0.0};
    for (int i = 1; i < 19; ++i) nodes.push_back(0.01 * std::pow(100.0, i / 19.0));
    nodes.push_back(1.0);
    const Profile seed = minimizing_family(dim, 6.0);
    std::vector<double> values;
    for (double r : nodes) values.push_back(seed.value(std::min(r, 1.0)));
    values.back() = 0.0;
    for (auto _ : state) {
        auto g = cc_J_gradient(dim, nodes, values);
        benchmark::DoNotOptimize(g.value);
    }
}
BENCHMARK(BM_gradient_20_nodes);
