#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perchopt/constrained.hpp"
#include "perchopt/epo.hpp"
#include "perchopt/search_space.hpp"

namespace perchopt {

/// Multi-run experiment: `runs` independent runs whose seeds derive from
/// base.seed via derive_run_seed. jobs > 1 executes runs on worker threads;
/// results are gathered by run index, so parallelism never changes output.
struct ExperimentPlan {
    EpoConfig base;
    std::size_t runs = 30;
    std::size_t jobs = 1;
};

/// Aggregate over the final BestRecords of an experiment. Standard deviations
/// use the population convention (divisor N).
struct ExperimentStats {
    std::vector<double> x_avg; ///< per-coordinate mean of final x_best
    std::vector<double> x_std;
    double y_avg = 0.0;
    double y_std = 0.0;
    std::vector<double> run_elapsed_seconds;
    double total_elapsed_seconds = 0.0;
    std::vector<std::uint64_t> seeds;
};

ExperimentStats compute_stats(const std::vector<RunResult>& runs);

struct ExperimentResult {
    std::vector<RunResult> runs;
    ExperimentStats stats;
};

/// Builds the per-run objective from the run seed; this is how noisy
/// objectives get a reproducible stream of their own.
using ObjectiveFactory = std::function<Objective(std::uint64_t run_seed)>;

/// Tag of the objective-noise substream within a run's seed space.
inline constexpr std::uint64_t kNoiseStreamTag = 0xF7;

/// Factory for a registered benchmark. Deterministic functions share one
/// closure; the noisy F7 gets a per-run noise stream derived from the run
/// seed. Throws std::invalid_argument for unknown names.
ObjectiveFactory benchmark_objective_factory(std::string_view name);

ExperimentResult run_experiment(const ExperimentPlan& plan, const SearchSpace& space,
                                const ObjectiveFactory& factory);
/// Convenience overload for deterministic objectives.
ExperimentResult run_experiment(const ExperimentPlan& plan, const SearchSpace& space,
                                const Objective& objective);

struct EtaRange {
    double eta_max = 0.0;
    double eta_min = 0.0;
};

struct SweepEntry {
    EtaRange range;
    bool valid = false;
    std::string error;                 ///< set when the range was rejected
    std::vector<double> median_trace;  ///< per-iteration median y_best across runs
    ExperimentStats stats;
};

/// Runs one experiment per (eta_max, eta_min) pair, Linear schedule; constant
/// eta is encoded as eta_max == eta_min. Invalid pairs are rejected
/// individually while the rest proceed.
std::vector<SweepEntry> eta_sweep(const ExperimentPlan& plan, const SearchSpace& space,
                                  const ObjectiveFactory& factory,
                                  std::span<const EtaRange> ranges);

struct ConvergencePoint {
    std::size_t t_s = 0;
    std::size_t hits = 0;
    std::size_t trials = 0;
    double rate = 0.0;
};

/// Reference configuration for the convergence-probability study: a single
/// particle with the derived (constant-eta) schedule, l_scale0=500, res=0.05.
/// One particle makes the t=0 rate equal the analytic probability of a
/// uniform point landing in the target box, and the slow derived decay keeps
/// long runs convergent while short ones still miss.
EpoConfig convergence_study_config();

/// Fraction of `trials` seeded runs of length t whose final x_best lies
/// within infinity-norm `delta` of `minimizer`, for each t. Throws
/// std::invalid_argument when `minimizer` is empty or does not match the
/// space.
std::vector<ConvergencePoint> convergence_probability_study(
    const SearchSpace& space, const ObjectiveFactory& factory,
    std::span<const double> minimizer, double delta, std::span<const std::size_t> t_values,
    std::size_t trials, const EpoConfig& proto);

/// Best strictly feasible point seen during a constrained run, evaluated at
/// the raw (unpenalized) objective.
struct FeasibleRecord {
    std::vector<double> x;
    double objective_value = 0.0;
};

struct ConstrainedRunOutcome {
    RunResult run;                              ///< trace of the penalized search
    std::optional<FeasibleRecord> best_feasible;
};

struct ConstrainedExperimentResult {
    std::vector<ConstrainedRunOutcome> outcomes;
    ExperimentStats stats; ///< over the penalized runs
};

/// Experiment over the penalized objective that also tracks, per run, the
/// best feasible point among all evaluated candidates.
ConstrainedExperimentResult run_constrained_experiment(const ConstrainedProblem& problem,
                                                       const ExperimentPlan& plan);

struct SurfaceGrid {
    std::size_t resolution = 0;
    std::vector<std::array<double, 3>> samples; ///< (x0, x1, f), row-major lattice
};

/// Uniform resolution x resolution lattice over a 2-D box with f sampled at
/// each node. Throws std::domain_error for resolution < 2 or non-2-D spaces.
SurfaceGrid surface_grid(const SearchSpace& space, const Objective& objective,
                         std::size_t resolution);

/// Median of a sample; the empty-sample median is NaN.
double median(std::vector<double> values);

} // namespace perchopt
