#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "perchopt/epo.hpp"
#include "perchopt/search_space.hpp"

namespace perchopt {

/// Registry entry for one benchmark function.
struct BenchmarkInfo {
    std::string name;
    std::size_t default_dims = 30;
    double lower = 0.0; ///< symmetric box bound
    double upper = 0.0;
    bool fixed_dims = false;    ///< only default_dims admitted (g5)
    bool deterministic = true;  ///< false only for the noisy F7

    double min_value(std::size_t dims) const;
    std::optional<std::vector<double>> minimizer(std::size_t dims) const;
    SearchSpace space(std::size_t dims) const;
};

const std::vector<BenchmarkInfo>& benchmark_registry();

/// nullptr when the name is not registered.
const BenchmarkInfo* find_benchmark(std::string_view name);

/// Noise-free form (F7 evaluated without its additive noise term).
/// Throws std::invalid_argument for unknown names, std::domain_error when the
/// length of x is not admitted for the function.
double evaluate_benchmark(std::string_view name, std::span<const double> x);

/// Full form; F7 adds a uniform(0,1) draw from `noise`. Identical to the
/// noise-free form for every deterministic function.
double evaluate_benchmark(std::string_view name, std::span<const double> x, Rng& noise);

/// Analytic minimum value (dimension-scaled for F8) and a minimizer when one
/// is known. Throws std::invalid_argument for unknown names.
std::pair<double, std::optional<std::vector<double>>>
known_optimum(std::string_view name, std::size_t dims);

/// Objective closure for the core loop. A null noise stream selects the
/// noise-free form. Noisy objectives hold the stream and are reproducible
/// per run; each run must own its stream.
Objective make_benchmark_objective(std::string_view name, std::shared_ptr<Rng> noise = nullptr);

} // namespace perchopt
