#include "perchopt/epo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace perchopt {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("search space needs at least one dimension with matching bound vectors");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j])) {
            std::ostringstream msg;
            msg << "search space bound " << j << " is empty: lower=" << lower[j]
                << " must be below upper=" << upper[j];
            throw std::invalid_argument(msg.str());
        }
    }
}

SearchSpace SearchSpace::symmetric(std::size_t dims, double half_width) {
    return box(dims, -half_width, half_width);
}

SearchSpace SearchSpace::box(std::size_t dims, double lo, double hi) {
    return SearchSpace(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

double SearchSpace::clamp(std::size_t j, double v) const {
    return std::min(std::max(v, lower[j]), upper[j]);
}

bool SearchSpace::contains(std::span<const double> x, double tol) const {
    if (x.size() != dims()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) return false;
    return true;
}

void EpoConfig::validate(const SearchSpace& space) const {
    if (space.dims() == 0)
        throw std::invalid_argument("search space has no dimensions");
    if (particles == 0)
        throw std::invalid_argument("particles must be at least 1");
    if (!(l_scale0 > 0.0))
        throw std::invalid_argument("l_scale0 must be positive");
    if (!(res > 0.0) || res >= l_scale0) {
        std::ostringstream msg;
        msg << "res must satisfy 0 < res < l_scale0 (got res=" << res
            << ", l_scale0=" << l_scale0
            << "): eta = (res/l_scale0)^(1/t_s) would be >= 1 and the sampling radius would grow";
        throw std::invalid_argument(msg.str());
    }
    if (eta.mode == EtaMode::Linear) {
        if (!(eta.eta_min > 0.0) || !(eta.eta_min <= eta.eta_max) || !(eta.eta_max < 1.0))
            throw std::invalid_argument("linear eta schedule needs 0 < eta_min <= eta_max < 1");
    }
    if (!(scale_offset >= 0.0) || scale_offset >= 1.0)
        throw std::invalid_argument("scale_offset must lie in [0, 1)");
    if (elite_count > particles)
        throw std::invalid_argument("elite_count cannot exceed the particle count");
}

double derive_eta(double res, double l_scale0, std::size_t t_s) {
    if (!(res > 0.0))
        throw std::domain_error("res must be positive");
    if (!(l_scale0 > 0.0))
        throw std::domain_error("l_scale0 must be positive");
    if (res >= l_scale0)
        throw std::domain_error("res must be below l_scale0: eta would be >= 1 and the sampling radius would grow");
    if (t_s == 0)
        throw std::domain_error("t_s must be at least 1");
    return std::pow(res / l_scale0, 1.0 / static_cast<double>(t_s));
}

double linear_eta(std::size_t t, std::size_t t_s, double eta_max, double eta_min) {
    if (t_s == 0)
        throw std::domain_error("t_s must be at least 1");
    if (t > t_s)
        throw std::domain_error("t exceeds t_s");
    if (!(eta_min > 0.0) || !(eta_min <= eta_max) || !(eta_max < 1.0))
        throw std::domain_error("eta bounds must satisfy 0 < eta_min <= eta_max < 1");
    return eta_max - static_cast<double>(t) * (eta_max - eta_min) / static_cast<double>(t_s);
}

double shrink_scale(double l_scale, double eta, double scale_offset) {
    return l_scale * eta + scale_offset;
}

Matrix sample_perturbation(const SwarmState& state, const EpoConfig& config, Rng& rng) {
    Matrix delta(state.positions.rows, state.positions.cols);
    if (config.dist == PerturbDist::UniformSymmetric) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (double& d : delta.data) d = state.l_scale * u(rng);
    } else {
        std::normal_distribution<double> n(0.0, 1.0);
        for (double& d : delta.data) d = state.l_scale * n(rng);
    }
    return delta;
}

void apply_step(SwarmState& state, const Matrix& delta, const SearchSpace& space,
                PerturbCenter center, const BestRecord& best) {
    Matrix& pos = state.positions;
    for (std::size_t i = 0; i < pos.rows; ++i) {
        for (std::size_t j = 0; j < pos.cols; ++j) {
            const double base = (center == PerturbCenter::Best) ? best.x[j] : pos(i, j);
            pos(i, j) = space.clamp(j, base + delta(i, j));
        }
    }
}

void evaluate_swarm(const Matrix& positions, const Objective& objective,
                    std::vector<double>& values) {
    values.resize(positions.rows);
    for (std::size_t i = 0; i < positions.rows; ++i)
        values[i] = objective(positions.row(i));
}

bool update_best(const std::vector<double>& values, const Matrix& positions, BestRecord& best) {
    std::size_t arg = values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) continue;
        if (arg == values.size() || values[i] < values[arg]) arg = i;
    }
    if (arg == values.size()) return false; // nothing finite this round
    if (!(values[arg] < best.value)) return false;
    auto row = positions.row(arg);
    best.x.assign(row.begin(), row.end());
    best.value = values[arg];
    return true;
}

bool elite_average(const std::vector<double>& values, const Matrix& positions, std::size_t n,
                   const Objective& objective, BestRecord& best) {
    if (n == 0 || n > positions.rows)
        throw std::domain_error("elite count must lie in [1, particle count]");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        return std::isfinite(values[i]) ? values[i] : std::numeric_limits<double>::infinity();
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    std::vector<double> x_avg(positions.cols, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        auto row = positions.row(order[r]);
        for (std::size_t j = 0; j < positions.cols; ++j) x_avg[j] += row[j];
    }
    for (double& c : x_avg) c /= static_cast<double>(n);

    const double y_avg = objective(x_avg);
    if (!std::isfinite(y_avg) || !(y_avg < best.value)) return false;
    best.x = std::move(x_avg);
    best.value = y_avg;
    return true;
}

std::size_t epo_step(SwarmState& state, BestRecord& best, const EpoConfig& config,
                     const SearchSpace& space, const Objective& objective, Rng& rng) {
    if (state.t >= config.iterations)
        throw std::domain_error("epo_step called past the configured iteration count");

    const Matrix delta = sample_perturbation(state, config, rng);
    apply_step(state, delta, space, config.center, best);
    evaluate_swarm(state.positions, objective, state.values);

    bool improved = update_best(state.values, state.positions, best);
    std::size_t evals = state.positions.rows;
    if (config.elite_count > 0) {
        improved = elite_average(state.values, state.positions, config.elite_count,
                                 objective, best) || improved;
        ++evals;
    }

    if (config.shrink_mode == ShrinkMode::EveryIteration || improved)
        state.l_scale = shrink_scale(state.l_scale, state.eta, config.scale_offset);

    ++state.t;
    if (config.eta.mode == EtaMode::Linear)
        state.eta = linear_eta(state.t, config.iterations, config.eta.eta_max, config.eta.eta_min);
    return evals;
}

namespace {

double initial_eta(const EpoConfig& config) {
    if (config.iterations == 0) return 1.0; // never used: no shrink ever happens
    if (config.eta.mode == EtaMode::Derived)
        return derive_eta(config.res, config.l_scale0, config.iterations);
    return linear_eta(0, config.iterations, config.eta.eta_max, config.eta.eta_min);
}

} // namespace

RunResult run(const EpoConfig& config, const SearchSpace& space, const Objective& objective) {
    config.validate(space);

    const auto t_start = std::chrono::steady_clock::now();
    Rng rng(config.seed);

    const std::size_t k = config.particles;
    const std::size_t m = space.dims();

    SwarmState state;
    state.positions = Matrix(k, m);
    state.l_scale = config.l_scale0;
    state.eta = initial_eta(config);

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < m; ++j)
            state.positions(i, j) = space.lower[j] + u01(rng) * space.width(j);

    evaluate_swarm(state.positions, objective, state.values);

    BestRecord best;
    // Row 0 anchors Best-centered perturbation even when no evaluation is finite.
    auto row0 = state.positions.row(0);
    best.x.assign(row0.begin(), row0.end());
    update_best(state.values, state.positions, best);

    RunResult out;
    out.seed = config.seed;
    out.evaluations = k;
    out.trace.reserve(config.iterations + 1);
    out.trace.push_back({0, best.value, state.l_scale});

    for (std::size_t t = 0; t < config.iterations; ++t) {
        out.evaluations += epo_step(state, best, config, space, objective, rng);
        out.trace.push_back({state.t, best.value, state.l_scale});
    }

    out.best = std::move(best);
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

} // namespace perchopt
