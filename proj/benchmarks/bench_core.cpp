#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include <cakebandit/adversaries.hpp>
#include <cakebandit/harness.hpp>
#include <cakebandit/metrics.hpp>
#include <cakebandit/policies.hpp>

namespace {

using namespace cakebandit;

void BM_Exp3Round(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Exp3Policy policy(n, default_eta(10000, n));
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        const PolicyDecision d = policy.select(rng);
        policy.observe(d, 0.5);
        benchmark::DoNotOptimize(d.chosen_agent);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Exp3Round)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

void BM_Exp3Probabilities(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Exp3Policy policy(n, 0.1);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        policy.observe(policy.select(rng), 0.3);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(policy.probabilities());
    }
}
BENCHMARK(BM_Exp3Probabilities)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

void BM_FrmExp3Round(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    FrmExp3Policy policy(n, default_eta(10000, n), default_theta(10000));
    std::mt19937_64 rng(3);
    for (auto _ : state) {
        const PolicyDecision d = policy.select(rng);
        policy.observe(d, 0.5);
        benchmark::DoNotOptimize(d.probability_used);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FrmExp3Round)->Arg(2)->Arg(8)->Arg(32);

void BM_AllocateToMinRound(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    AllocateToMinPolicy policy(n);
    std::mt19937_64 rng(4);
    for (auto _ : state) {
        const PolicyDecision d = policy.select(rng);
        policy.observe(d, 0.5);
        benchmark::DoNotOptimize(d.chosen_agent);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AllocateToMinRound)->Arg(2)->Arg(32)->Arg(128);

void BM_GenQuasiUniform(benchmark::State& state) {
    const auto T = static_cast<std::int64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_quasi_uniform(T, 5, 0.5, 0.1, seed++));
    }
    state.SetItemsProcessed(state.iterations() * T * 5);
}
BENCHMARK(BM_GenQuasiUniform)->Arg(1000)->Arg(10000);

void BM_GenFmds(benchmark::State& state) {
    const auto T = static_cast<std::int64_t>(state.range(0));
    FmdsParams params;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_fmds(T, 5, params, seed++));
    }
    state.SetItemsProcessed(state.iterations() * T * 5);
}
BENCHMARK(BM_GenFmds)->Arg(1000)->Arg(10000);

void BM_Exp3Episode(benchmark::State& state) {
    const auto T = static_cast<std::int64_t>(state.range(0));
    const auto schedule = gen_quasi_uniform(T, 5, 0.5, 0.1, 7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Exp3Policy policy(5, default_eta(T, 5));
        benchmark::DoNotOptimize(run_episode(schedule, policy, seed++));
    }
    state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_Exp3Episode)->Arg(1000)->Arg(8000);

void BM_MetricCurves(benchmark::State& state) {
    const auto T = static_cast<std::int64_t>(state.range(0));
    const auto schedule = gen_quasi_uniform(T, 5, 0.5, 0.1, 8);
    Exp3Policy policy(5, default_eta(T, 5));
    const auto trace = run_episode(schedule, policy, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(revenue_regret_curve(schedule, trace));
        benchmark::DoNotOptimize(fairness_value_curve(schedule, trace));
    }
    state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_MetricCurves)->Arg(1000)->Arg(8000);

void BM_OptOracle(benchmark::State& state) {
    const auto T = static_cast<std::int64_t>(state.range(0));
    const auto schedule = gen_quasi_uniform(T, 2, 0.5, 0.4, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_opt_fairness(schedule));
    }
}
BENCHMARK(BM_OptOracle)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
