#include "perchopt/harness.hpp"
#include "perchopt/objectives.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace perchopt {

namespace {

double population_std(const std::vector<double>& v, double mean) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

} // namespace

ExperimentStats compute_stats(const std::vector<RunResult>& runs) {
    ExperimentStats s;
    if (runs.empty()) return s;

    const std::size_t m = runs.front().best.x.size();
    std::vector<double> column(runs.size());

    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < runs.size(); ++i) column[i] = runs[i].best.x[j];
        const double avg = mean_of(column);
        s.x_avg.push_back(avg);
        s.x_std.push_back(population_std(column, avg));
    }

    for (std::size_t i = 0; i < runs.size(); ++i) column[i] = runs[i].best.value;
    s.y_avg = mean_of(column);
    s.y_std = population_std(column, s.y_avg);

    for (const RunResult& r : runs) {
        s.run_elapsed_seconds.push_back(r.elapsed_seconds);
        s.total_elapsed_seconds += r.elapsed_seconds;
        s.seeds.push_back(r.seed);
    }
    return s;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const SearchSpace& space,
                                const ObjectiveFactory& factory) {
    if (plan.runs == 0) return {};
    plan.base.validate(space); // fail before any evaluation, for every run at once

    std::vector<std::uint64_t> seeds(plan.runs);
    for (std::size_t i = 0; i < plan.runs; ++i) seeds[i] = derive_run_seed(plan.base.seed, i);

    ExperimentResult out;
    out.runs.resize(plan.runs);

    auto run_one = [&](std::size_t i) {
        EpoConfig cfg = plan.base;
        cfg.seed = seeds[i];
        const Objective obj = factory(cfg.seed);
        out.runs[i] = run(cfg, space, obj);
    };

    const std::size_t jobs = std::max<std::size_t>(1, plan.jobs);
    if (jobs == 1 || plan.runs == 1) {
        for (std::size_t i = 0; i < plan.runs; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < plan.runs; i = next.fetch_add(1))
                run_one(i);
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(jobs, plan.runs); ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    out.stats = compute_stats(out.runs);
    return out;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const SearchSpace& space,
                                const Objective& objective) {
    return run_experiment(plan, space, [&](std::uint64_t) { return objective; });
}

ObjectiveFactory benchmark_objective_factory(std::string_view name) {
    const BenchmarkInfo* info = find_benchmark(name);
    if (!info)
        throw std::invalid_argument("unknown benchmark function: " + std::string(name) +
                                    " (see `list` for the registered names)");
    const std::string fn = info->name;
    if (info->deterministic) {
        Objective obj = make_benchmark_objective(fn);
        return [obj](std::uint64_t) { return obj; };
    }
    return [fn](std::uint64_t run_seed) {
        auto noise = std::make_shared<Rng>(derive_stream_seed(run_seed, kNoiseStreamTag));
        return make_benchmark_objective(fn, std::move(noise));
    };
}

std::vector<SweepEntry> eta_sweep(const ExperimentPlan& plan, const SearchSpace& space,
                                  const ObjectiveFactory& factory,
                                  std::span<const EtaRange> ranges) {
    std::vector<SweepEntry> out;
    for (const EtaRange& r : ranges) {
        SweepEntry entry;
        entry.range = r;

        ExperimentPlan sub = plan;
        sub.base.eta = EtaSchedule::linear(r.eta_max, r.eta_min);
        try {
            sub.base.validate(space);
        } catch (const std::invalid_argument& err) {
            entry.error = err.what();
            out.push_back(std::move(entry));
            continue;
        }

        ExperimentResult res = run_experiment(sub, space, factory);
        entry.valid = true;
        entry.stats = res.stats;

        const std::size_t points = sub.base.iterations + 1;
        entry.median_trace.resize(points);
        std::vector<double> column(res.runs.size());
        for (std::size_t t = 0; t < points; ++t) {
            for (std::size_t i = 0; i < res.runs.size(); ++i)
                column[i] = res.runs[i].trace[t].y_best;
            entry.median_trace[t] = median(column);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

EpoConfig convergence_study_config() {
    EpoConfig cfg;
    cfg.particles = 1;
    cfg.eta = EtaSchedule::derived();
    cfg.l_scale0 = 500.0;
    cfg.res = 0.05;
    return cfg;
}

std::vector<ConvergencePoint> convergence_probability_study(
    const SearchSpace& space, const ObjectiveFactory& factory,
    std::span<const double> minimizer, double delta, std::span<const std::size_t> t_values,
    std::size_t trials, const EpoConfig& proto) {
    if (minimizer.empty())
        throw std::invalid_argument("convergence study needs an objective with a known minimizer");
    if (minimizer.size() != space.dims())
        throw std::invalid_argument("known minimizer does not match the search-space dimension");
    if (!(delta > 0.0))
        throw std::invalid_argument("delta must be positive");
    if (trials == 0)
        throw std::invalid_argument("trials must be at least 1");

    std::vector<ConvergencePoint> out;
    for (std::size_t t_s : t_values) {
        ConvergencePoint pt;
        pt.t_s = t_s;
        pt.trials = trials;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            EpoConfig cfg = proto;
            cfg.iterations = t_s;
            cfg.seed = derive_run_seed(proto.seed, trial);
            const Objective obj = factory(cfg.seed);
            const RunResult r = run(cfg, space, obj);

            bool inside = true;
            for (std::size_t j = 0; j < minimizer.size() && inside; ++j)
                inside = std::fabs(r.best.x[j] - minimizer[j]) <= delta;
            if (inside) ++pt.hits;
        }
        pt.rate = static_cast<double>(pt.hits) / static_cast<double>(trials);
        out.push_back(pt);
    }
    return out;
}

ConstrainedExperimentResult run_constrained_experiment(const ConstrainedProblem& problem,
                                                       const ExperimentPlan& plan) {
    ConstrainedExperimentResult out;
    if (plan.runs == 0) return out;
    plan.base.validate(problem.space);

    out.outcomes.resize(plan.runs);
    std::vector<RunResult> penalized_runs(plan.runs);

    auto run_one = [&](std::size_t i) {
        EpoConfig cfg = plan.base;
        cfg.seed = derive_run_seed(plan.base.seed, i);

        auto feasible = std::make_shared<std::optional<FeasibleRecord>>();
        Objective obj = [&problem, feasible](std::span<const double> x) {
            ConstrainedEval ev = evaluate_constrained(problem, x);
            if (ev.feasible &&
                (!feasible->has_value() || ev.raw < (*feasible)->objective_value))
                *feasible = FeasibleRecord{std::move(ev.x), ev.raw};
            return ev.penalized;
        };

        out.outcomes[i].run = run(cfg, problem.space, obj);
        out.outcomes[i].best_feasible = std::move(*feasible);
        penalized_runs[i] = out.outcomes[i].run;
    };

    const std::size_t jobs = std::max<std::size_t>(1, plan.jobs);
    if (jobs == 1 || plan.runs == 1) {
        for (std::size_t i = 0; i < plan.runs; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < plan.runs; i = next.fetch_add(1))
                run_one(i);
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(jobs, plan.runs); ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    out.stats = compute_stats(penalized_runs);
    return out;
}

SurfaceGrid surface_grid(const SearchSpace& space, const Objective& objective,
                         std::size_t resolution) {
    if (space.dims() != 2)
        throw std::domain_error("surface grids are only defined for 2-D functions");
    if (resolution < 2)
        throw std::domain_error("surface resolution must be at least 2 (a degenerate lattice has no extent)");

    SurfaceGrid grid;
    grid.resolution = resolution;
    grid.samples.reserve(resolution * resolution);

    const double step0 = space.width(0) / static_cast<double>(resolution - 1);
    const double step1 = space.width(1) / static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double x0 = space.lower[0] + static_cast<double>(i) * step0;
        for (std::size_t j = 0; j < resolution; ++j) {
            const double x1 = space.lower[1] + static_cast<double>(j) * step1;
            const std::array<double, 2> x{x0, x1};
            grid.samples.push_back({x0, x1, objective(std::span<const double>(x))});
        }
    }
    return grid;
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    double lo = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lo + hi);
}

} // namespace perchopt
