#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "perchopt/rng.hpp"
#include "perchopt/search_space.hpp"

namespace perchopt {

/// Objective callable: m-vector in, scalar out. Minimization everywhere.
/// Non-finite return values are treated as worse than any finite value.
using Objective = std::function<double(std::span<const double>)>;

enum class EtaMode {
    Derived, ///< constant eta = (res / l_scale0)^(1/t_s), computed once
    Linear   ///< eta ramps from eta_max at t=0 to eta_min at t=t_s
};

enum class ShrinkMode {
    EveryIteration, ///< l_scale shrinks once per iteration
    OnImprovement   ///< l_scale shrinks only in iterations that improved the best
};

enum class PerturbCenter {
    Best, ///< every particle re-samples around the incumbent
    Self  ///< every particle steps from its own position
};

enum class PerturbDist {
    UniformSymmetric, ///< entries are l_scale * U(-1, 1)
    Gaussian          ///< entries are N(0, l_scale^2)
};

struct EtaSchedule {
    EtaMode mode = EtaMode::Linear;
    double eta_max = 0.9;
    double eta_min = 0.8;

    static EtaSchedule derived() { return {EtaMode::Derived, 0.0, 0.0}; }
    static EtaSchedule linear(double max, double min) { return {EtaMode::Linear, max, min}; }
    static EtaSchedule constant(double eta) { return {EtaMode::Linear, eta, eta}; }
};

/// Full parameterization of one run.
struct EpoConfig {
    std::size_t particles = 30;
    std::size_t iterations = 500; ///< t_s; 0 means initialization only
    double l_scale0 = 500.0;      ///< initial sampling radius, coordinate units
    double res = 0.05;            ///< terminal radius; requires 0 < res < l_scale0
    EtaSchedule eta;
    double scale_offset = 0.0;    ///< additive term of the shrink recursion, in [0, 1)
    std::size_t elite_count = 0;  ///< n best rows averaged into an extra candidate; 0 disables
    ShrinkMode shrink_mode = ShrinkMode::EveryIteration;
    PerturbCenter center = PerturbCenter::Best;
    PerturbDist dist = PerturbDist::UniformSymmetric;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument with an actionable message on the first
    /// violated constraint. Called by run() before any evaluation.
    void validate(const SearchSpace& space) const;
};

/// Row-major k x m storage for particle coordinates.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Incumbent solution. value only ever decreases.
struct BestRecord {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
};

struct SwarmState {
    Matrix positions;           ///< k x m
    std::vector<double> values; ///< last evaluation of each row
    double l_scale = 0.0;
    double eta = 0.0;
    std::size_t t = 0;
};

struct TracePoint {
    std::size_t t;
    double y_best;
    double l_scale;
};

struct RunResult {
    BestRecord best;
    std::vector<TracePoint> trace; ///< one row per iteration, plus the t=0 row
    std::size_t evaluations = 0;   ///< total objective calls
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// eta = (res / l_scale0)^(1/t_s); strictly inside (0,1) for valid inputs.
/// Throws std::domain_error when res <= 0, res >= l_scale0 (eta would be >= 1
/// and the sampling radius would grow) or t_s == 0.
double derive_eta(double res, double l_scale0, std::size_t t_s);

/// eta_max - t * (eta_max - eta_min) / t_s. Throws std::domain_error when
/// t > t_s or the bounds violate 0 < eta_min <= eta_max < 1.
double linear_eta(std::size_t t, std::size_t t_s, double eta_max, double eta_min);

/// l_scale * eta + scale_offset.
double shrink_scale(double l_scale, double eta, double scale_offset = 0.0);

/// k x m matrix of independent steps scaled by the current l_scale.
Matrix sample_perturbation(const SwarmState& state, const EpoConfig& config, Rng& rng);

/// Moves every row (from itself or from the incumbent, per `center`) by the
/// corresponding delta row, then clamps all coordinates into the box.
void apply_step(SwarmState& state, const Matrix& delta, const SearchSpace& space,
                PerturbCenter center, const BestRecord& best);

/// values[i] = objective(row i), in index order.
void evaluate_swarm(const Matrix& positions, const Objective& objective,
                    std::vector<double>& values);

/// Takes the lowest-index minimum among finite values; updates `best` when it
/// strictly improves. Returns whether an update happened. All-non-finite
/// values leave `best` untouched.
bool update_best(const std::vector<double>& values, const Matrix& positions, BestRecord& best);

/// Averages the coordinates of the n best rows (stable ascending sort by
/// value) into a single extra candidate, evaluates it and submits it through
/// the update_best rule. Returns whether it improved the record.
/// Throws std::domain_error when n == 0 or n > row count.
bool elite_average(const std::vector<double>& values, const Matrix& positions, std::size_t n,
                   const Objective& objective, BestRecord& best);

/// One full iteration: perturb, clamp, evaluate, track best, optional elite
/// averaging, shrink (per shrink_mode), advance t, refresh eta (Linear).
/// Returns the number of objective evaluations performed.
std::size_t epo_step(SwarmState& state, BestRecord& best, const EpoConfig& config,
                     const SearchSpace& space, const Objective& objective, Rng& rng);

/// Uniform-random initialization inside the box, one initial evaluation to
/// seed the incumbent, then exactly config.iterations steps.
RunResult run(const EpoConfig& config, const SearchSpace& space, const Objective& objective);

} // namespace perchopt
