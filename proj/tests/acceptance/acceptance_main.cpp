// Acceptance suite: one check per target scenario, one [PASS]/[FAIL] line
// each, measured values always printed. Run with no arguments for the full
// suite or pass criterion numbers to select a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "perchopt/constrained.hpp"
#include "perchopt/harness.hpp"
#include "perchopt/objectives.hpp"

using namespace perchopt;

namespace {

struct Outcome {
    bool pass = false;
    std::string details;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

ExperimentPlan default_plan(std::size_t runs, std::uint64_t seed) {
    ExperimentPlan plan;
    plan.base = EpoConfig{}; // k=30, t_s=500, l_scale0=500, res=0.05, linear 0.9->0.8
    plan.base.seed = seed;
    plan.runs = runs;
    return plan;
}

std::vector<double> final_values(const ExperimentResult& res) {
    std::vector<double> v;
    for (const RunResult& r : res.runs) v.push_back(r.best.value);
    return v;
}

// 1. Uni-modal quality: F1 dim 30, defaults, 30 runs.
//    median <= 1e-12, best-of-30 <= 1e-20, total runtime <= 60 s.
Outcome criterion_1() {
    const double t0 = now_seconds();
    const ExperimentResult res = run_experiment(
        default_plan(30, 1), find_benchmark("F1")->space(30), benchmark_objective_factory("F1"));
    const double elapsed = now_seconds() - t0;

    std::vector<double> v = final_values(res);
    const double med = median(v);
    const double best = *std::min_element(v.begin(), v.end());

    Outcome out;
    out.pass = med <= 1e-12 && best <= 1e-20 && elapsed <= 60.0;
    out.details = "median=" + fmt(med) + " (target <=1e-12), best=" + fmt(best) +
                  " (target <=1e-20), elapsed=" + fmt(elapsed) + "s (target <=60s)";
    return out;
}

// 2. g1 exactness: dim 4, 30 runs, defaults.
//    avg final y in [2, 2+1e-6]; every coordinate within 1e-3 of -2.
Outcome criterion_2() {
    const ExperimentResult res = run_experiment(
        default_plan(30, 2), find_benchmark("g1")->space(4), benchmark_objective_factory("g1"));

    double worst_coord = 0.0;
    for (const RunResult& r : res.runs)
        for (double c : r.best.x) worst_coord = std::max(worst_coord, std::fabs(c + 2.0));

    const double avg = res.stats.y_avg;
    Outcome out;
    out.pass = avg >= 2.0 && avg <= 2.0 + 1e-6 && worst_coord <= 1e-3;
    out.details = "avg=" + fmt(avg) + " (target in [2, 2+1e-6]), worst |x_j+2|=" +
                  fmt(worst_coord) + " (target <=1e-3)";
    return out;
}

// 3. Elite-averaging degradation: g3 dim 4, default parameters, 30 runs per n.
//    avg at n=2 at least 6 orders of magnitude below avg at n=10; <= 5 min.
Outcome criterion_3() {
    const double t0 = now_seconds();
    const SearchSpace space = find_benchmark("g3")->space(4);
    const ObjectiveFactory factory = benchmark_objective_factory("g3");

    ExperimentPlan plan2 = default_plan(30, 3);
    plan2.base.elite_count = 2;
    const double avg_n2 = run_experiment(plan2, space, factory).stats.y_avg;

    ExperimentPlan plan10 = default_plan(30, 3);
    plan10.base.elite_count = 10;
    const double avg_n10 = run_experiment(plan10, space, factory).stats.y_avg;
    const double elapsed = now_seconds() - t0;

    Outcome out;
    out.pass = avg_n2 * 1e6 <= avg_n10 && elapsed <= 300.0;
    out.details = "avg(n=2)=" + fmt(avg_n2) + ", avg(n=10)=" + fmt(avg_n10) +
                  " (target avg(n=2) <= 1e-6 * avg(n=10)), elapsed=" + fmt(elapsed) + "s";
    return out;
}

// 4. Multi-modal desk scale: Ackley dim 2, defaults, 30 runs, median <= 1e-6.
Outcome criterion_4() {
    const ExperimentResult res = run_experiment(
        default_plan(30, 4), find_benchmark("F10")->space(2), benchmark_objective_factory("F10"));
    std::vector<double> v = final_values(res);
    const double med = median(v);
    Outcome out;
    out.pass = med <= 1e-6;
    out.details = "median=" + fmt(med) + " (target <=1e-6)";
    return out;
}

// Shared machinery for criteria 5-7.
struct ConstrainedSummary {
    double best_feasible = std::numeric_limits<double>::infinity();
    std::size_t feasible_runs = 0;
    double worst_violation = 0.0;
    std::vector<double> per_run_best;
};

ConstrainedSummary summarize(const ConstrainedProblem& problem,
                             const ConstrainedExperimentResult& res) {
    ConstrainedSummary s;
    for (const ConstrainedRunOutcome& o : res.outcomes) {
        if (!o.best_feasible) continue;
        ++s.feasible_runs;
        s.per_run_best.push_back(o.best_feasible->objective_value);
        s.best_feasible = std::min(s.best_feasible, o.best_feasible->objective_value);
        for (const Objective& g : problem.inequality)
            s.worst_violation = std::max(s.worst_violation, g(o.best_feasible->x));
    }
    return s;
}

// 5. Cantilever: 10 runs, best feasible f in [13.30, 13.50], all reported
//    solutions feasible within 1e-6, runtime <= 30 s.
Outcome criterion_5() {
    const double t0 = now_seconds();
    const ConstrainedProblem p = cantilever_problem();
    const ConstrainedExperimentResult res = run_constrained_experiment(p, default_plan(10, 5));
    const double elapsed = now_seconds() - t0;
    const ConstrainedSummary s = summarize(p, res);

    Outcome out;
    out.pass = s.feasible_runs == 10 && s.best_feasible >= 13.30 && s.best_feasible <= 13.50 &&
               s.worst_violation <= 1e-6 && elapsed <= 30.0;
    out.details = "best feasible f=" + fmt(s.best_feasible) +
                  " (target in [13.30, 13.50]), feasible runs=" + std::to_string(s.feasible_runs) +
                  "/10, worst constraint=" + fmt(s.worst_violation) + " (target <=1e-6), elapsed=" +
                  fmt(elapsed) + "s";
    return out;
}

// 6. Three-bar truss: 10 runs, defaults l=1 P=2 sigma=2,
//    best feasible f in [2.6389, 2.66].
Outcome criterion_6() {
    const ConstrainedProblem p = three_bar_truss_problem();
    const ConstrainedExperimentResult res = run_constrained_experiment(p, default_plan(10, 6));
    const ConstrainedSummary s = summarize(p, res);

    Outcome out;
    out.pass = s.feasible_runs == 10 && s.best_feasible >= 2.6389 && s.best_feasible <= 2.66 &&
               s.worst_violation <= 1e-6;
    out.details = "best feasible f=" + fmt(s.best_feasible) +
                  " (target in [2.6389, 2.66]), feasible runs=" + std::to_string(s.feasible_runs) +
                  "/10, worst constraint=" + fmt(s.worst_violation);
    return out;
}

// 7. Gear train: oracle exactly 2.7009e-12 (+-1e-15) with (49,19,16,43) among
//    the attaining tuples; the stochastic search finds f <= 1e-8 in >= 5/10 runs.
Outcome criterion_7() {
    const GearOracleResult oracle = gear_train_exhaustive_oracle();
    const bool value_ok = std::fabs(oracle.best_value - 2.7009e-12) <= 1e-15;
    const bool tuple_ok =
        std::find(oracle.minimizers.begin(), oracle.minimizers.end(),
                  std::array<int, 4>{49, 19, 16, 43}) != oracle.minimizers.end();

    const ConstrainedProblem p = gear_train_problem();
    const ConstrainedExperimentResult res = run_constrained_experiment(p, default_plan(10, 7));
    std::size_t hits = 0;
    for (const ConstrainedRunOutcome& o : res.outcomes)
        if (o.best_feasible && o.best_feasible->objective_value <= 1e-8) ++hits;

    Outcome out;
    out.pass = value_ok && tuple_ok && hits >= 5;
    out.details = "oracle=" + fmt(oracle.best_value) +
                  " (target 2.7009e-12 +-1e-15), (49,19,16,43) attained=" +
                  (tuple_ok ? "yes" : "no") + ", runs with f<=1e-8: " + std::to_string(hits) +
                  "/10 (target >=5)";
    return out;
}

// 8. Eta sensitivity on F1 dim 2 (l_scale0=100, res=0.05): the 0.9->0.8 ramp
//    reaches the constant-eta final median level within 200 iterations. The
//    constant reference is the derived value (0.05/100)^(1/500).
Outcome criterion_8() {
    ExperimentPlan plan = default_plan(30, 8);
    plan.base.l_scale0 = 100.0;
    plan.base.res = 0.05;

    const double eta_const = derive_eta(plan.base.res, plan.base.l_scale0, plan.base.iterations);
    const std::vector<EtaRange> ranges{{eta_const, eta_const}, {0.9, 0.8}};
    const auto entries = eta_sweep(plan, find_benchmark("F1")->space(2),
                                   benchmark_objective_factory("F1"), ranges);

    Outcome out;
    if (entries.size() != 2 || !entries[0].valid || !entries[1].valid) {
        out.details = "sweep failed to produce both traces";
        return out;
    }
    const double level = entries[0].median_trace.back();
    const std::vector<double>& ramp = entries[1].median_trace;
    std::size_t reach_t = ramp.size();
    for (std::size_t t = 0; t < ramp.size(); ++t)
        if (ramp[t] <= level) {
            reach_t = t;
            break;
        }

    out.pass = reach_t <= 200;
    out.details = "constant-eta(" + fmt(eta_const) + ") level=" + fmt(level) +
                  ", 0.9->0.8 reaches it at t=" +
                  (reach_t < ramp.size() ? std::to_string(reach_t) : std::string("never")) +
                  " (target <=200)";
    return out;
}

// 9. Property bundle: monotone traces, exact scale decay, clamping,
//    determinism, elite-1 identity, statistics oracle, convergence ramp.
Outcome criterion_9() {
    std::ostringstream detail;
    bool pass = true;
    auto report = [&](const char* what, bool ok) {
        pass = pass && ok;
        detail << what << "=" << (ok ? "ok" : "FAIL") << " ";
    };

    // monotone y_best over 100 random configurations
    {
        Rng meta(909);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto pick = [&](std::size_t n) { return static_cast<std::size_t>(u(meta) * double(n)); };
        bool monotone = true;
        for (int trial = 0; trial < 100 && monotone; ++trial) {
            EpoConfig cfg;
            cfg.particles = 1 + pick(8);
            cfg.iterations = 5 + pick(36);
            cfg.l_scale0 = 0.5 + u(meta) * 300.0;
            cfg.res = cfg.l_scale0 * (1e-4 + u(meta) * 0.5);
            cfg.eta = pick(2) ? EtaSchedule::derived()
                              : EtaSchedule::linear(0.85 + u(meta) * 0.1, 0.5 + u(meta) * 0.3);
            cfg.scale_offset = pick(2) ? 0.0 : u(meta) * 0.9;
            cfg.elite_count = pick(cfg.particles + 1);
            cfg.shrink_mode = pick(2) ? ShrinkMode::EveryIteration : ShrinkMode::OnImprovement;
            cfg.center = pick(2) ? PerturbCenter::Best : PerturbCenter::Self;
            cfg.dist = pick(2) ? PerturbDist::UniformSymmetric : PerturbDist::Gaussian;
            cfg.seed = 7000 + static_cast<std::uint64_t>(trial);
            const SearchSpace space = SearchSpace::box(1 + pick(5), -30.0, 30.0);
            const RunResult r = run(cfg, space, make_benchmark_objective(pick(2) ? "F1" : "F9"));
            for (std::size_t t = 1; t < r.trace.size(); ++t)
                monotone = monotone && r.trace[t].y_best <= r.trace[t - 1].y_best;
        }
        report("monotone-traces", monotone);
    }

    // l_scale(t_s) = res under EveryIteration + Derived
    {
        EpoConfig cfg;
        cfg.eta = EtaSchedule::derived();
        cfg.seed = 91;
        const RunResult r = run(cfg, SearchSpace::box(3, -100.0, 100.0),
                                make_benchmark_objective("F1"));
        const double rel = std::fabs(r.trace.back().l_scale - cfg.res) / cfg.res;
        report("scale-decay-exact", rel <= 1e-9);
    }

    // clamping at every step
    {
        const SearchSpace space = SearchSpace::box(2, -1.0, 1.0);
        EpoConfig cfg;
        cfg.particles = 5;
        cfg.iterations = 50;
        cfg.l_scale0 = 40.0;
        cfg.res = 0.01;
        cfg.seed = 92;
        Rng rng(cfg.seed);
        SwarmState state;
        state.positions = Matrix(cfg.particles, 2);
        state.l_scale = cfg.l_scale0;
        state.eta = linear_eta(0, cfg.iterations, cfg.eta.eta_max, cfg.eta.eta_min);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (std::size_t i = 0; i < cfg.particles; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                state.positions(i, j) = space.lower[j] + u01(rng) * space.width(j);
        const Objective obj = make_benchmark_objective("F9");
        evaluate_swarm(state.positions, obj, state.values);
        BestRecord best;
        auto row0 = state.positions.row(0);
        best.x.assign(row0.begin(), row0.end());
        update_best(state.values, state.positions, best);
        bool clamped = true;
        for (std::size_t t = 0; t < cfg.iterations; ++t) {
            epo_step(state, best, cfg, space, obj, rng);
            for (std::size_t i = 0; i < cfg.particles; ++i)
                clamped = clamped && space.contains(state.positions.row(i));
        }
        report("clamping", clamped);
    }

    // same-seed bit-identical traces, distinct seeds distinct traces
    {
        EpoConfig cfg;
        cfg.particles = 6;
        cfg.iterations = 80;
        const SearchSpace space = SearchSpace::box(3, -100.0, 100.0);
        const Objective obj = make_benchmark_objective("F1");
        bool identical = true;
        cfg.seed = 93;
        const RunResult a = run(cfg, space, obj);
        const RunResult b = run(cfg, space, obj);
        for (std::size_t t = 0; t < a.trace.size(); ++t)
            identical = identical && a.trace[t].y_best == b.trace[t].y_best &&
                        a.trace[t].l_scale == b.trace[t].l_scale;
        report("same-seed-identical", identical);

        bool all_differ = true;
        for (std::uint64_t s = 0; s < 10; ++s) {
            cfg.seed = 1000 + s;
            const RunResult c = run(cfg, space, obj);
            cfg.seed = 2000 + s;
            const RunResult d = run(cfg, space, obj);
            bool differ = false;
            for (std::size_t t = 0; t < c.trace.size() && !differ; ++t)
                differ = c.trace[t].y_best != d.trace[t].y_best;
            all_differ = all_differ && differ;
        }
        report("distinct-seeds-differ", all_differ);
    }

    // elite_count = 1 trace identity
    {
        EpoConfig cfg;
        cfg.particles = 6;
        cfg.iterations = 80;
        cfg.seed = 94;
        const SearchSpace space = SearchSpace::box(3, -50.0, 50.0);
        const Objective obj = make_benchmark_objective("F1");
        const RunResult plain = run(cfg, space, obj);
        cfg.elite_count = 1;
        const RunResult elited = run(cfg, space, obj);
        bool identical = plain.trace.size() == elited.trace.size();
        for (std::size_t t = 0; identical && t < plain.trace.size(); ++t)
            identical = plain.trace[t].y_best == elited.trace[t].y_best;
        identical = identical && elited.evaluations == plain.evaluations + cfg.iterations;
        report("elite1-identity", identical);
    }

    // statistics oracle equivalence
    {
        ExperimentPlan plan;
        plan.base.particles = 6;
        plan.base.iterations = 40;
        plan.base.l_scale0 = 100.0;
        plan.base.seed = 95;
        plan.runs = 7;
        const ExperimentResult res =
            run_experiment(plan, SearchSpace::box(3, -10.0, 10.0), make_benchmark_objective("F9"));
        long double mean = 0.0L;
        for (const RunResult& r : res.runs) mean += r.best.value;
        mean /= static_cast<long double>(res.runs.size());
        long double var = 0.0L;
        for (const RunResult& r : res.runs) {
            const long double d = r.best.value - mean;
            var += d * d;
        }
        var /= static_cast<long double>(res.runs.size());
        const bool stats_ok =
            std::fabs(res.stats.y_avg - static_cast<double>(mean)) <=
                1e-12 * std::max(1.0, std::fabs(res.stats.y_avg)) &&
            std::fabs(res.stats.y_std - static_cast<double>(std::sqrt(var))) <=
                1e-12 * std::max(1.0, res.stats.y_std);
        report("stats-oracle", stats_ok);
    }

    // convergence-probability ramp: rate(500) >= 0.95 >= rate(50), non-decreasing
    {
        const SearchSpace space = SearchSpace::box(2, -100.0, 100.0);
        EpoConfig proto = convergence_study_config();
        proto.seed = 96;
        const std::vector<std::size_t> ts{50, 150, 500};
        const std::vector<double> origin{0.0, 0.0};
        const auto pts = convergence_probability_study(
            space, benchmark_objective_factory("F1"), origin, 0.5, ts, 100, proto);
        const double r50 = pts[0].rate, r150 = pts[1].rate, r500 = pts[2].rate;
        // binomial 3-sigma slack for the monotonicity check
        auto se = [](double p, double n) { return std::sqrt(std::max(p * (1 - p), 1e-4) / n); };
        const bool ramp_ok = r500 >= 0.95 && 0.95 >= r50 &&
                             r150 >= r50 - 3 * se(r50, 100) && r500 >= r150 - 3 * se(r150, 100);
        detail << "rates(50,150,500)=(" << r50 << "," << r150 << "," << r500 << ") ";
        report("convergence-ramp", ramp_ok);
    }

    return {pass, detail.str()};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> fn;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "uni-modal quality, F1 dim 30", criterion_1},
        {2, "g1 exactness, dim 4", criterion_2},
        {3, "elite-averaging degradation, g3 dim 4", criterion_3},
        {4, "multi-modal desk scale, Ackley dim 2", criterion_4},
        {5, "cantilever beam design", criterion_5},
        {6, "three-bar truss design", criterion_6},
        {7, "gear train design + exhaustive oracle", criterion_7},
        {8, "eta sensitivity, F1 dim 2", criterion_8},
        {9, "property suites", criterion_9},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.details = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                    out.details.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}
