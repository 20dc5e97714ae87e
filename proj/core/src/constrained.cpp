#include "perchopt/constrained.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace perchopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> snap_integers(const ConstrainedProblem& problem, std::span<const double> x) {
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t j : problem.integer_vars) {
        double v = std::round(out[j]);
        out[j] = problem.space.clamp(j, v);
    }
    return out;
}

ConstrainedEval evaluate_constrained(const ConstrainedProblem& problem, std::span<const double> x) {
    ConstrainedEval ev;
    ev.x = snap_integers(problem, x);

    ev.raw = problem.objective(ev.x);
    if (!std::isfinite(ev.raw)) {
        ev.penalized = kInf;
        return ev;
    }

    ev.penalized = ev.raw;
    ev.feasible = true;
    for (const Objective& g : problem.inequality) {
        const double v = g(ev.x);
        if (!std::isfinite(v)) {
            ev.penalized = kInf;
            ev.feasible = false;
            return ev;
        }
        if (v > kFeasibilityTol) ev.feasible = false;
        if (v > 0.0)
            ev.penalized += problem.penalty_rho * std::pow(v, problem.penalty_beta);
    }
    return ev;
}

double penalized_value(const ConstrainedProblem& problem, std::span<const double> x) {
    return evaluate_constrained(problem, x).penalized;
}

bool is_feasible(const ConstrainedProblem& problem, std::span<const double> x) {
    return evaluate_constrained(problem, x).feasible;
}

Objective make_penalized_objective(const ConstrainedProblem& problem) {
    const ConstrainedProblem* p = &problem;
    return [p](std::span<const double> x) { return penalized_value(*p, x); };
}

ConstrainedProblem cantilever_problem() {
    ConstrainedProblem p;
    p.name = "cantilever";
    p.space = SearchSpace::box(5, 0.01, 100.0);
    p.objective = [](std::span<const double> x) {
        return 0.6224 * (x[0] + x[1] + x[2] + x[3] + x[4]);
    };
    p.inequality.push_back([](std::span<const double> x) {
        return 61.0 / (x[0] * x[0] * x[0]) + 37.0 / (x[1] * x[1] * x[1]) +
               19.0 / (x[2] * x[2] * x[2]) + 7.0 / (x[3] * x[3] * x[3]) +
               1.0 / (x[4] * x[4] * x[4]) - 1.0;
    });
    return p;
}

ConstrainedProblem three_bar_truss_problem(double l, double load, double sigma) {
    if (!(l > 0.0) || !(load > 0.0) || !(sigma > 0.0))
        throw std::invalid_argument("truss constants l, load and sigma must be positive");

    const double rt2 = std::sqrt(2.0);
    ConstrainedProblem p;
    p.name = "three-bar-truss";
    p.space = SearchSpace::box(2, 0.0, 1.0);
    p.objective = [l, rt2](std::span<const double> x) {
        return (2.0 * rt2 * x[0] + x[1]) * l;
    };
    // x = (0, 0) makes the section denominators vanish; the resulting
    // non-finite stress reads as an infinite penalty.
    p.inequality.push_back([load, sigma, rt2](std::span<const double> x) {
        const double den = rt2 * x[0] * x[0] + 2.0 * x[0] * x[1];
        return (rt2 * x[0] + x[1]) / den * load - sigma;
    });
    p.inequality.push_back([load, sigma, rt2](std::span<const double> x) {
        const double den = rt2 * x[0] * x[0] + 2.0 * x[0] * x[1];
        return x[1] / den * load - sigma;
    });
    p.inequality.push_back([load, sigma, rt2](std::span<const double> x) {
        const double den = rt2 * x[1] + x[0];
        return load / den - sigma;
    });
    return p;
}

ConstrainedProblem gear_train_problem() {
    ConstrainedProblem p;
    p.name = "gear-train";
    p.space = SearchSpace::box(4, 12.0, 60.0);
    p.integer_vars = {0, 1, 2, 3};
    p.objective = [](std::span<const double> x) {
        const double r = 1.0 / 6.931 - (x[2] * x[1]) / (x[0] * x[3]);
        return r * r;
    };
    return p;
}

GearOracleResult gear_train_exhaustive_oracle(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("gear oracle range is empty");

    GearOracleResult out;
    out.best_value = kInf;
    const double target = 1.0 / 6.931;
    for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
            for (int c = lo; c <= hi; ++c)
                for (int d = lo; d <= hi; ++d) {
                    const double r = target - static_cast<double>(c * b) / static_cast<double>(a * d);
                    const double v = r * r;
                    if (v < out.best_value) {
                        out.best_value = v;
                        out.minimizers.clear();
                        out.minimizers.push_back({a, b, c, d});
                    } else if (v == out.best_value) {
                        out.minimizers.push_back({a, b, c, d});
                    }
                }
    return out;
}

std::vector<std::string> constrained_problem_names() {
    return {"cantilever", "three-bar-truss", "gear-train"};
}

ConstrainedProblem make_constrained_problem(std::string_view name) {
    if (name == "cantilever") return cantilever_problem();
    if (name == "three-bar-truss") return three_bar_truss_problem();
    if (name == "gear-train") return gear_train_problem();
    throw std::invalid_argument("unknown constrained problem: " + std::string(name) +
                                " (expected cantilever, three-bar-truss or gear-train)");
}

} // namespace perchopt
