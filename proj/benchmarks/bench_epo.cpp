#include <benchmark/benchmark.h>

#include "perchopt/constrained.hpp"
#include "perchopt/harness.hpp"
#include "perchopt/objectives.hpp"

using namespace perchopt;

namespace {

void BM_EvaluateSphere30(benchmark::State& state) {
    const Objective f = make_benchmark_objective("F1");
    const std::vector<double> x(30, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(f(x));
}
BENCHMARK(BM_EvaluateSphere30);

void BM_EvaluateAckley30(benchmark::State& state) {
    const Objective f = make_benchmark_objective("F10");
    const std::vector<double> x(30, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(f(x));
}
BENCHMARK(BM_EvaluateAckley30);

void BM_StepDim30(benchmark::State& state) {
    const SearchSpace space = SearchSpace::box(30, -100.0, 100.0);
    EpoConfig cfg;
    cfg.seed = 1;
    const Objective f = make_benchmark_objective("F1");

    Rng rng(cfg.seed);
    SwarmState st;
    st.positions = Matrix(cfg.particles, 30);
    st.l_scale = cfg.l_scale0;
    st.eta = 0.9;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (double& v : st.positions.data) v = -100.0 + 200.0 * u01(rng);
    evaluate_swarm(st.positions, f, st.values);
    BestRecord best;
    auto row0 = st.positions.row(0);
    best.x.assign(row0.begin(), row0.end());
    update_best(st.values, st.positions, best);

    for (auto _ : state) {
        st.t = 0; // keep stepping the same horizon
        epo_step(st, best, cfg, space, f, rng);
        benchmark::DoNotOptimize(best.value);
    }
}
BENCHMARK(BM_StepDim30);

void BM_FullRunF1Dim30(benchmark::State& state) {
    const SearchSpace space = SearchSpace::box(30, -100.0, 100.0);
    EpoConfig cfg;
    const Objective f = make_benchmark_objective("F1");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(run(cfg, space, f).best.value);
    }
}
BENCHMARK(BM_FullRunF1Dim30)->Unit(benchmark::kMillisecond);

void BM_GearOracle(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gear_train_exhaustive_oracle().best_value);
}
BENCHMARK(BM_GearOracle)->Unit(benchmark::kMillisecond);

void BM_PenalizedCantilever(benchmark::State& state) {
    const ConstrainedProblem p = cantilever_problem();
    const std::vector<double> x{6.0, 5.3, 4.5, 3.5, 2.2};
    for (auto _ : state) benchmark::DoNotOptimize(penalized_value(p, x));
}
BENCHMARK(BM_PenalizedCantilever);

} // namespace

BENCHMARK_MAIN();
