#include "perchopt/objectives.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace perchopt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

// Single-coordinate maximizer of x*sin(sqrt(x)) on [0, 500] and its value;
// commonly rounded to -418.9829 * dims at 420.9687.
constexpr double kSchwefelArg = 420.968746359982;
constexpr double kSchwefelMinPerDim = -418.9828872724339;

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// Sum of squares plus product of absolute values, as printed.
double sum_sq_plus_prod_abs(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (double v : x) {
        s += v * v;
        p *= std::fabs(v);
    }
    return s + p;
}

// Squared running sums (Schwefel 1.2).
double running_sum_sq(std::span<const double> x) {
    double s = 0.0, run = 0.0;
    for (double v : x) {
        run += v;
        s += run * run;
    }
    return s;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + kE;
}

// Goldstein-Price, standard form; minimum 3 at (0, -1).
double goldstein_price(std::span<const double> x) {
    const double a = x[0], b = x[1];
    const double t1 = 1.0 + (a + b + 1.0) * (a + b + 1.0) *
                                (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    const double t2 = 30.0 + (2.0 * a - 3.0 * b) * (2.0 * a - 3.0 * b) *
                                 (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    return t1 * t2;
}

double griewank(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s / 4000.0 - p + 1.0;
}

// Griewank with the cosine argument divided by i instead of sqrt(i).
double griewank_printed(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i];
        p *= std::cos(x[i] / static_cast<double>(i + 1));
    }
    return s / 4000.0 - p + 1.0;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double step_function(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        const double f = std::floor(v + 0.5);
        s += f * f;
    }
    return s;
}

// Noise-free component of F7.
double weighted_quartic(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += static_cast<double>(i + 1) * x[i] * x[i] * x[i] * x[i];
    return s;
}

double schwefel_sine(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += -v * std::sin(std::sqrt(std::fabs(v)));
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return s;
}

double shifted_sphere_plus_two(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v + 2.0) * (v + 2.0);
    return s + 2.0;
}

using EvalFn = double (*)(std::span<const double>);

struct Entry {
    BenchmarkInfo info;
    EvalFn eval;
    std::size_t min_dims; ///< smallest admitted dimensionality
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {{"g1", 30, -10.0, 10.0, false, true}, shifted_sphere_plus_two, 1},
        {{"g2", 30, -10.0, 10.0, false, true}, sum_sq_plus_prod_abs, 1},
        {{"g3", 30, -10.0, 10.0, false, true}, running_sum_sq, 1},
        {{"g4", 30, -5.12, 5.12, false, true}, ackley, 1},
        {{"g5", 2, -10.0, 10.0, true, true}, goldstein_price, 2},
        {{"g6", 30, -10.0, 10.0, false, true}, griewank, 1},
        {{"g6-printed", 30, -10.0, 10.0, false, true}, griewank_printed, 1},
        {{"F1", 30, -100.0, 100.0, false, true}, sphere, 1},
        {{"F2", 30, -10.0, 10.0, false, true}, sum_sq_plus_prod_abs, 1},
        {{"F3", 30, -100.0, 100.0, false, true}, running_sum_sq, 1},
        {{"F4", 30, -100.0, 100.0, false, true}, max_abs, 1},
        {{"F5", 30, -30.0, 30.0, false, true}, rosenbrock, 2},
        {{"F6", 30, -100.0, 100.0, false, true}, step_function, 1},
        {{"F7", 30, -1.28, 1.28, false, false}, weighted_quartic, 1},
        {{"F8", 30, -500.0, 500.0, false, true}, schwefel_sine, 1},
        {{"F9", 30, -5.12, 5.12, false, true}, rastrigin, 1},
        {{"F10", 30, -5.12, 5.12, false, true}, ackley, 1},
    };
    return table;
}

const Entry& entry_or_throw(std::string_view name) {
    for (const Entry& e : entries())
        if (e.info.name == name) return e;
    throw std::invalid_argument("unknown benchmark function: " + std::string(name) +
                                " (see `list` for the registered names)");
}

void check_dims(const Entry& e, std::size_t dims) {
    if (e.info.fixed_dims && dims != e.info.default_dims) {
        std::ostringstream msg;
        msg << e.info.name << " is defined for exactly " << e.info.default_dims
            << " dimensions, got " << dims;
        throw std::domain_error(msg.str());
    }
    if (dims < e.min_dims) {
        std::ostringstream msg;
        msg << e.info.name << " needs at least " << e.min_dims << " dimensions, got " << dims;
        throw std::domain_error(msg.str());
    }
}

} // namespace

double BenchmarkInfo::min_value(std::size_t dims) const {
    if (name == "g1") return 2.0;
    if (name == "g5") return 3.0;
    if (name == "F8") return kSchwefelMinPerDim * static_cast<double>(dims);
    return 0.0;
}

std::optional<std::vector<double>> BenchmarkInfo::minimizer(std::size_t dims) const {
    if (name == "g1") return std::vector<double>(dims, -2.0);
    if (name == "g5") return std::vector<double>{0.0, -1.0};
    if (name == "F5") return std::vector<double>(dims, 1.0);
    if (name == "F8") return std::vector<double>(dims, kSchwefelArg);
    // Everything else bottoms out at the origin (F6 non-uniquely so).
    return std::vector<double>(dims, 0.0);
}

SearchSpace BenchmarkInfo::space(std::size_t dims) const {
    return SearchSpace::box(dims, lower, upper);
}

const std::vector<BenchmarkInfo>& benchmark_registry() {
    static const std::vector<BenchmarkInfo> infos = [] {
        std::vector<BenchmarkInfo> v;
        for (const Entry& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

const BenchmarkInfo* find_benchmark(std::string_view name) {
    for (const BenchmarkInfo& b : benchmark_registry())
        if (b.name == name) return &b;
    return nullptr;
}

double evaluate_benchmark(std::string_view name, std::span<const double> x) {
    const Entry& e = entry_or_throw(name);
    check_dims(e, x.size());
    return e.eval(x);
}

double evaluate_benchmark(std::string_view name, std::span<const double> x, Rng& noise) {
    const Entry& e = entry_or_throw(name);
    check_dims(e, x.size());
    double v = e.eval(x);
    if (!e.info.deterministic) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        v += u(noise);
    }
    return v;
}

std::pair<double, std::optional<std::vector<double>>>
known_optimum(std::string_view name, std::size_t dims) {
    const Entry& e = entry_or_throw(name);
    check_dims(e, dims);
    return {e.info.min_value(dims), e.info.minimizer(dims)};
}

Objective make_benchmark_objective(std::string_view name, std::shared_ptr<Rng> noise) {
    const Entry* e = &entry_or_throw(name); // static storage, stable address
    if (e->info.deterministic || !noise) {
        return [e](std::span<const double> x) {
            check_dims(*e, x.size());
            return e->eval(x);
        };
    }
    return [e, noise](std::span<const double> x) {
        check_dims(*e, x.size());
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return e->eval(x) + u(*noise);
    };
}

} // namespace perchopt
