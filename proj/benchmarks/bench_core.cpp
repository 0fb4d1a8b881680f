#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rankfd/covariance.hpp"
#include "rankfd/inference.hpp"
#include "rankfd/ranks.hpp"
#include "rankfd/simulation.hpp"

using namespace rankfd;

namespace {

std::vector<double> random_values(std::size_t n, bool ties) {
    std::mt19937_64 gen(99);
    std::vector<double> v(n);
    if (ties) {
        std::uniform_int_distribution<int> lattice(-20, 20);
        for (auto& x : v) x = 0.5 * lattice(gen);
    } else {
        std::normal_distribution<double> nd;
        for (auto& x : v) x = nd(gen);
    }
    return v;
}

Dataset random_groups(std::size_t d, std::size_t n) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    std::vector<Sample> groups(d, Sample(n));
    for (auto& g : groups)
        for (auto& x : g) x = nd(gen);
    return Dataset(std::move(groups));
}

} // namespace

static void BM_Midranks(benchmark::State& state) {
    const auto v = random_values(static_cast<std::size_t>(state.range(0)),
                                 state.range(1) != 0);
    for (auto _ : state) benchmark::DoNotOptimize(midranks(v));
}
BENCHMARK(BM_Midranks)->ArgsProduct({{100, 1000, 10000}, {0, 1}});

static void BM_CovarianceEstimate(benchmark::State& state) {
    const Dataset data =
        random_groups(static_cast<std::size_t>(state.range(0)),
                      static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(covariance_estimate(data));
}
BENCHMARK(BM_CovarianceEstimate)->ArgsProduct({{4, 8}, {10, 40}});

static void BM_AnalyzeLeucocytes(benchmark::State& state) {
    const Dataset data = leucocyte_dataset();
    const TwoWayHypotheses h = two_way_hypotheses(2, 2);
    const std::vector<HypothesisSpec> hyps{h.main_a, h.main_b, h.interaction};
    for (auto _ : state) benchmark::DoNotOptimize(analyze(data, hyps, {}));
}
BENCHMARK(BM_AnalyzeLeucocytes);

static void BM_AtsEigenMonteCarlo(benchmark::State& state) {
    const Dataset data = random_groups(4, 10);
    const RankTables tables(data);
    const EffectEstimates est = unweighted_effects(data, tables);
    const CovarianceEstimate cov = covariance_estimate(data, tables);
    const HypothesisSpec h = one_way_hypothesis(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(ats_eigen_test(
            est, cov, h, 0.05, static_cast<std::uint64_t>(state.range(0)), 1));
}
BENCHMARK(BM_AtsEigenMonteCarlo)->Arg(10000)->Arg(100000);

static void BM_TypeOneErrorReplication(benchmark::State& state) {
    const sim::SimSetting setting = sim::SimSetting::standard(1);
    std::uint64_t rep = 0;
    const HypothesisSpec h = one_way_hypothesis(4);
    for (auto _ : state) {
        num::RngStream rng(3, rep++, 0);
        const Dataset data =
            sim::generate_dataset(setting, sim::ErrorDistribution::Normal,
                                  static_cast<std::size_t>(state.range(0)), rng);
        const RankTables tables(data);
        const EffectEstimates est = unweighted_effects(data, tables);
        const CovarianceEstimate cov = covariance_estimate(data, tables);
        const F1Components f1 = f1_components(data, tables);
        benchmark::DoNotOptimize(ats_f_test(est, cov, h, f1.f1, 0.05));
    }
}
BENCHMARK(BM_TypeOneErrorReplication)->Arg(0)->Arg(25);
