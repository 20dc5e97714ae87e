#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perchopt/epo.hpp"
#include "perchopt/search_space.hpp"

namespace perchopt {

/// Feasibility tolerance: x is feasible iff every g_i(x) <= this.
inline constexpr double kFeasibilityTol = 1e-9;

/// Inequality-constrained minimization problem handled through a static
/// exterior penalty. Coordinates listed in integer_vars are snapped to the
/// nearest in-box integer before every evaluation, so the optimizer walks the
/// integer lattice through a piecewise-constant landscape.
struct ConstrainedProblem {
    std::string name;
    Objective objective;                   ///< raw f(x)
    std::vector<Objective> inequality;     ///< feasible iff g_i(x) <= 0
    SearchSpace space;
    double penalty_rho = 1e6;
    double penalty_beta = 2.0;
    std::vector<std::size_t> integer_vars;
};

/// x with integer_vars coordinates rounded to the nearest integer and clamped
/// into the box; the identity for problems without integer variables.
std::vector<double> snap_integers(const ConstrainedProblem& problem, std::span<const double> x);

struct ConstrainedEval {
    double penalized = 0.0; ///< f + rho * sum max(0, g_i)^beta; +inf on non-finite evaluations
    double raw = 0.0;       ///< objective alone
    bool feasible = false;  ///< all g_i <= kFeasibilityTol and everything finite
    std::vector<double> x;  ///< the (snapped) point actually evaluated
};

ConstrainedEval evaluate_constrained(const ConstrainedProblem& problem, std::span<const double> x);

double penalized_value(const ConstrainedProblem& problem, std::span<const double> x);
bool is_feasible(const ConstrainedProblem& problem, std::span<const double> x);

/// Closure over penalized_value for the core loop. Holds a reference: the
/// problem must outlive the returned objective.
Objective make_penalized_objective(const ConstrainedProblem& problem);

/// Weight minimization of a five-segment beam: f = 0.6224 * sum(x), one load
/// constraint 61/x1^3 + 37/x2^3 + 19/x3^3 + 7/x4^3 + 1/x5^3 <= 1, box [0.01, 100]^5.
ConstrainedProblem cantilever_problem();

/// Two-variable truss weight minimization with stress constraints; constants
/// default to l=1, load=2, sigma=2. Box [0, 1]^2.
ConstrainedProblem three_bar_truss_problem(double l = 1.0, double load = 2.0, double sigma = 2.0);

/// Four integer gear-tooth counts in [12, 60]; squared deviation of the gear
/// ratio from 1/6.931. Box-only constraints.
ConstrainedProblem gear_train_problem();

struct GearOracleResult {
    double best_value = 0.0;
    std::vector<std::array<int, 4>> minimizers; ///< every tuple attaining best_value
};

/// Exhaustive enumeration of all integer tuples in [lo, hi]^4. Ground truth
/// the stochastic search can be checked against.
GearOracleResult gear_train_exhaustive_oracle(int lo = 12, int hi = 60);

std::vector<std::string> constrained_problem_names();

/// Problems addressable by CLI name: "cantilever", "three-bar-truss",
/// "gear-train". Throws std::invalid_argument for anything else.
ConstrainedProblem make_constrained_problem(std::string_view name);

} // namespace perchopt
