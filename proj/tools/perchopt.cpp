// perchopt — eagle-perching global optimizer, benchmark suite and
// experiment runner. See README.md for the subcommand reference.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perchopt/constrained.hpp"
#include "perchopt/harness.hpp"
#include "perchopt/io.hpp"
#include "perchopt/objectives.hpp"

namespace {

using namespace perchopt;

struct CommonOpts {
    std::size_t particles = 30;
    std::size_t iterations = 500;
    double l_scale0 = 500.0;
    double res = 0.05;
    std::string eta_schedule = "linear";
    double eta_max = 0.9;
    double eta_min = 0.8;
    double scale_offset = 0.0;
    std::size_t elite = 0;
    std::string shrink = "every";
    std::string center = "best";
    std::string dist = "uniform";
    std::uint64_t seed = 0;
    std::size_t runs = 30;
    std::size_t jobs = 1;
    std::size_t dims = 0; // 0 = registry default
    std::string out;
    std::string format = "csv";

    CLI::Option* seed_opt = nullptr;

    EpoConfig config() const {
        EpoConfig c;
        c.particles = particles;
        c.iterations = iterations;
        c.l_scale0 = l_scale0;
        c.res = res;
        c.eta.mode = eta_mode_from_string(eta_schedule);
        c.eta.eta_max = eta_max;
        c.eta.eta_min = eta_min;
        c.scale_offset = scale_offset;
        c.elite_count = elite;
        c.shrink_mode = shrink_mode_from_string(shrink);
        c.center = center_from_string(center);
        c.dist = dist_from_string(dist);
        c.seed = seed;
        return c;
    }
};

void add_epo_flags(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--particles", o.particles, "swarm size k")->capture_default_str();
    sub->add_option("--iterations", o.iterations, "iteration count t_s")->capture_default_str();
    sub->add_option("--l-scale", o.l_scale0, "initial sampling radius")->capture_default_str();
    sub->add_option("--res", o.res, "terminal sampling radius (0 < res < l-scale)")
        ->capture_default_str();
    sub->add_option("--eta-schedule", o.eta_schedule, "eta schedule: linear or derived")
        ->capture_default_str();
    sub->add_option("--eta-max", o.eta_max, "linear schedule start value")->capture_default_str();
    sub->add_option("--eta-min", o.eta_min, "linear schedule end value")->capture_default_str();
    sub->add_option("--scale-offset", o.scale_offset, "additive shrink offset in [0,1)")
        ->capture_default_str();
    sub->add_option("--elite", o.elite, "rows averaged into an extra candidate (0 = off)")
        ->capture_default_str();
    sub->add_option("--shrink-mode", o.shrink, "every or improve")->capture_default_str();
    sub->add_option("--center", o.center, "perturbation center: best or self")
        ->capture_default_str();
    sub->add_option("--dist", o.dist, "perturbation distribution: uniform or gaussian")
        ->capture_default_str();
    o.seed_opt = sub->add_option("--seed", o.seed, "base seed (drawn from entropy when absent)");
    sub->add_option("--runs", o.runs, "independent runs per experiment")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads for the runs")
        ->envname("PERCHOPT_JOBS")
        ->capture_default_str();
    // handled by apply_config_file() before parsing; registered for --help only
    sub->add_option("--config", "key=value file with the same names as the flags (flags win)");
}

// Expands `--config FILE` into the equivalent flags. Keys already present on
// the command line are skipped, so explicit flags override file values.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (path.empty()) return args;

    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config file " + path);

    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    auto given = [&args](const std::string& flag) {
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };

    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line is not key=value: '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        while (!key.empty() && key[0] == '-') key.erase(key.begin());
        if (key.empty())
            throw std::runtime_error("config line has an empty key: '" + line + "'");
        const std::string flag = "--" + key;
        if (!given(flag)) args.push_back(flag + "=" + value);
    }
    return args;
}

// Draws a seed from system entropy when --seed was not given, and announces it
// so the invocation can be replayed.
void finalize_seed(CommonOpts& o) {
    if (o.seed_opt && o.seed_opt->count() > 0) return;
    std::random_device rd;
    o.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cout << "seed " << o.seed << " (from system entropy; pass --seed to reproduce)\n";
}

std::string fmt_g(double v, int prec = 10) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

std::string vec_str(std::span<const double> x, int prec = 10) {
    std::string s = "[";
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j) s += ", ";
        s += fmt_g(x[j], prec);
    }
    return s + "]";
}

const BenchmarkInfo& lookup(const std::string& name) {
    const BenchmarkInfo* info = find_benchmark(name);
    if (!info)
        throw std::invalid_argument("unknown benchmark function: " + name +
                                    " (see `perchopt list`)");
    return *info;
}

std::size_t resolve_dims(const BenchmarkInfo& info, std::size_t requested) {
    std::size_t dims = requested == 0 ? info.default_dims : requested;
    if (info.fixed_dims && dims != info.default_dims) {
        std::ostringstream msg;
        msg << info.name << " is defined for exactly " << info.default_dims
            << " dimensions, got " << dims;
        throw std::invalid_argument(msg.str());
    }
    return dims;
}

void maybe_export(const CommonOpts& o, const ExperimentResult& result, const ExportMeta& meta) {
    if (o.out.empty()) return;
    std::filesystem::path path(o.out);
    if (std::filesystem::is_directory(path))
        path /= default_export_name(meta, o.format);
    if (o.format == "json")
        write_json(path, result, meta);
    else if (o.format == "csv")
        write_runs_csv(path, result, meta);
    else
        throw std::invalid_argument("unknown export format '" + o.format +
                                    "' (expected csv or json)");
    std::cout << "wrote " << path.string() << "\n";
}

void print_timing(const ExperimentStats& stats) {
    std::fprintf(stderr, "timing: total %.3fs, per-run avg %.4fs\n", stats.total_elapsed_seconds,
                 stats.run_elapsed_seconds.empty()
                     ? 0.0
                     : stats.total_elapsed_seconds / double(stats.run_elapsed_seconds.size()));
}

int cmd_bench(CommonOpts& o, const std::string& problem, const std::string& trace_out) {
    const BenchmarkInfo& info = lookup(problem);
    const std::size_t dims = resolve_dims(info, o.dims);
    finalize_seed(o);

    const SearchSpace space = info.space(dims);
    ExperimentPlan plan{o.config(), o.runs, o.jobs};
    const ExperimentResult result =
        run_experiment(plan, space, benchmark_objective_factory(info.name));

    ExportMeta meta{info.name, dims, o.runs, plan.base};
    std::cout << provenance_line(meta) << "\n";

    std::vector<double> finals;
    for (const RunResult& r : result.runs) finals.push_back(r.best.value);
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < finals.size(); ++i)
        if (finals[i] < finals[best_i]) best_i = i;

    std::cout << "y_best: avg " << fmt_g(result.stats.y_avg) << "  std "
              << fmt_g(result.stats.y_std) << "  median " << fmt_g(median(finals)) << "  best "
              << fmt_g(finals[best_i]) << "\n";
    std::cout << "x_best avg: " << vec_str(result.stats.x_avg, 6) << "\n";
    std::cout << "x_best std: " << vec_str(result.stats.x_std, 6) << "\n";
    std::cout << "best run " << best_i << " (seed " << result.runs[best_i].seed
              << "): y " << fmt_g(finals[best_i]) << "\n";
    std::cout << "  x " << vec_str(result.runs[best_i].best.x, 6) << "\n";
    std::cout << "evaluations per run: " << result.runs[best_i].evaluations << "\n";

    maybe_export(o, result, meta);
    if (!trace_out.empty()) {
        write_trace_csv(std::filesystem::path(trace_out), result.runs[best_i], meta);
        std::cout << "wrote " << trace_out << "\n";
    }
    print_timing(result.stats);
    return 0;
}

int cmd_constrained(CommonOpts& o, const std::string& problem_name, double truss_l,
                    double truss_p, double truss_sigma, double rho, double beta) {
    ConstrainedProblem problem = problem_name == "three-bar-truss"
                                     ? three_bar_truss_problem(truss_l, truss_p, truss_sigma)
                                     : make_constrained_problem(problem_name);
    problem.penalty_rho = rho;
    problem.penalty_beta = beta;
    finalize_seed(o);

    ExperimentPlan plan{o.config(), o.runs, o.jobs};
    const ConstrainedExperimentResult result = run_constrained_experiment(problem, plan);

    ExportMeta meta{problem.name, problem.space.dims(), o.runs, plan.base};
    std::cout << provenance_line(meta) << " penalty_rho=" << fmt_g(rho)
              << " penalty_beta=" << fmt_g(beta) << "\n";

    const FeasibleRecord* overall = nullptr;
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const auto& fr = result.outcomes[i].best_feasible;
        if (fr) {
            std::cout << "run " << std::setw(2) << i << ": feasible f " << fmt_g(fr->objective_value)
                      << "  x " << vec_str(fr->x, 8) << "\n";
            if (!overall || fr->objective_value < overall->objective_value) overall = &*fr;
        } else {
            std::cout << "run " << std::setw(2) << i << ": no feasible point found\n";
        }
    }
    if (overall) {
        std::cout << "best feasible: f " << fmt_g(overall->objective_value) << "  x "
                  << vec_str(overall->x, 10) << "\n";
    } else {
        std::cout << "best feasible: none\n";
    }
    std::cout << "penalized y_best: avg " << fmt_g(result.stats.y_avg) << "  std "
              << fmt_g(result.stats.y_std) << "\n";
    print_timing(result.stats);
    return 0;
}

std::vector<EtaRange> parse_ranges(const std::string& spec) {
    std::vector<EtaRange> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("range '" + item +
                                        "' must look like eta_max:eta_min (e.g. 0.9:0.8)");
        out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    }
    return out;
}

int cmd_sweep(CommonOpts& o, const std::string& problem, const std::string& ranges_spec) {
    const BenchmarkInfo& info = lookup(problem);
    const std::size_t dims = resolve_dims(info, o.dims);
    finalize_seed(o);

    const std::vector<EtaRange> ranges = parse_ranges(ranges_spec);
    const SearchSpace space = info.space(dims);
    ExperimentPlan plan{o.config(), o.runs, o.jobs};
    const std::vector<SweepEntry> entries =
        eta_sweep(plan, space, benchmark_objective_factory(info.name), ranges);

    ExportMeta meta{info.name, dims, o.runs, plan.base};
    std::cout << provenance_line(meta) << "\n";
    for (const SweepEntry& e : entries) {
        if (!e.valid) {
            std::cout << "eta " << fmt_g(e.range.eta_max) << "->" << fmt_g(e.range.eta_min)
                      << ": rejected (" << e.error << ")\n";
            continue;
        }
        std::cout << "eta " << fmt_g(e.range.eta_max) << "->" << fmt_g(e.range.eta_min)
                  << ": final median y_best " << fmt_g(e.median_trace.back()) << "\n";
    }

    if (!o.out.empty()) {
        std::filesystem::path path(o.out);
        if (std::filesystem::is_directory(path))
            path /= default_export_name(meta, "sweep.csv");
        write_sweep_csv(path, entries, meta);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_converge(CommonOpts& o, const std::string& problem, double delta,
                 std::vector<std::size_t> t_values, std::size_t trials) {
    const BenchmarkInfo& info = lookup(problem);
    const std::size_t dims = resolve_dims(info, o.dims);
    finalize_seed(o);

    auto [min_value, minimizer] = known_optimum(info.name, dims);
    (void)min_value;
    if (!minimizer)
        throw std::invalid_argument(info.name + " has no known minimizer to converge to");

    const SearchSpace space = info.space(dims);
    EpoConfig proto = o.config();
    if (t_values.empty()) t_values = {50, 150, 500};

    const auto points = convergence_probability_study(
        space, benchmark_objective_factory(info.name), *minimizer, delta, t_values, trials, proto);

    ExportMeta meta{info.name, dims, trials, proto};
    std::cout << provenance_line(meta) << " delta=" << fmt_g(delta) << "\n";
    for (const ConvergencePoint& p : points)
        std::cout << "t=" << p.t_s << " rate=" << fmt_g(p.rate, 4) << " (" << p.hits << "/"
                  << p.trials << ")\n";
    return 0;
}

int cmd_oracle(const std::string& target, int lo, int hi, std::size_t max_tuples) {
    if (target != "gear-train")
        throw std::invalid_argument("no exhaustive oracle for '" + target +
                                    "' (only gear-train has one)");
    const GearOracleResult res = gear_train_exhaustive_oracle(lo, hi);
    std::cout << "gear-train exhaustive optimum over [" << lo << ", " << hi << "]^4\n";
    std::cout << "best value: " << fmt_g(res.best_value, 17) << "\n";
    std::cout << "attained by " << res.minimizers.size() << " tuple(s):\n";
    for (std::size_t i = 0; i < res.minimizers.size() && i < max_tuples; ++i) {
        const auto& t = res.minimizers[i];
        std::cout << "  (" << t[0] << ", " << t[1] << ", " << t[2] << ", " << t[3] << ")\n";
    }
    if (res.minimizers.size() > max_tuples)
        std::cout << "  ... (" << res.minimizers.size() - max_tuples << " more)\n";
    return 0;
}

int cmd_list() {
    std::cout << std::left << std::setw(12) << "name" << std::setw(6) << "dims" << std::setw(20)
              << "range" << std::setw(16) << "f_min" << "notes\n";
    for (const BenchmarkInfo& b : benchmark_registry()) {
        std::ostringstream range;
        range << "[" << fmt_g(b.lower, 6) << ", " << fmt_g(b.upper, 6) << "]";
        std::string notes;
        if (!b.deterministic) notes += "noisy ";
        if (b.fixed_dims) notes += "fixed-dims ";
        std::cout << std::left << std::setw(12) << b.name << std::setw(6) << b.default_dims
                  << std::setw(20) << range.str() << std::setw(16)
                  << fmt_g(b.min_value(b.default_dims), 8) << notes << "\n";
    }
    std::cout << "constrained: ";
    bool first = true;
    for (const std::string& n : constrained_problem_names()) {
        if (!first) std::cout << ", ";
        std::cout << n;
        first = false;
    }
    std::cout << "\n";
    return 0;
}

int cmd_surface(CommonOpts& o, const std::string& problem, std::size_t resolution) {
    const BenchmarkInfo& info = lookup(problem);
    const std::size_t dims = resolve_dims(info, o.dims == 0 ? 2 : o.dims);
    if (dims != 2)
        throw std::invalid_argument("surface grids are only defined for 2 dimensions");

    const SearchSpace space = info.space(2);
    const SurfaceGrid grid = surface_grid(space, make_benchmark_objective(info.name), resolution);

    ExportMeta meta{info.name, 2, 0, o.config()};
    if (o.out.empty()) {
        write_surface_csv(std::cout, grid, meta);
    } else {
        std::filesystem::path path(o.out);
        if (std::filesystem::is_directory(path))
            path /= default_export_name(meta, "surface.csv");
        write_surface_csv(path, grid, meta);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perchopt — eagle-perching global optimizer and benchmark harness"};
    app.require_subcommand(1);

    // bench
    CommonOpts bench_opts;
    std::string bench_problem, bench_trace_out;
    CLI::App* bench = app.add_subcommand("bench", "run a multi-run experiment on a benchmark");
    bench->add_option("problem", bench_problem, "function name, e.g. F1 or g3")->required();
    bench->add_option("--dims", bench_opts.dims, "dimensions (0 = registry default)");
    add_epo_flags(bench, bench_opts);
    bench->add_option("--out", bench_opts.out, "export file or directory");
    bench->add_option("--format", bench_opts.format, "csv or json")->capture_default_str();
    bench->add_option("--trace-out", bench_trace_out, "write the best run's trace CSV here");

    // constrained
    CommonOpts con_opts;
    std::string con_problem;
    double truss_l = 1.0, truss_p = 2.0, truss_sigma = 2.0;
    double penalty_rho = 1e6, penalty_beta = 2.0;
    CLI::App* con = app.add_subcommand("constrained", "run an engineering design problem");
    con->add_option("problem", con_problem, "cantilever, three-bar-truss or gear-train")
        ->required();
    add_epo_flags(con, con_opts);
    con->add_option("--truss-l", truss_l, "truss member length")->capture_default_str();
    con->add_option("--truss-p", truss_p, "truss load")->capture_default_str();
    con->add_option("--truss-sigma", truss_sigma, "truss stress limit")->capture_default_str();
    con->add_option("--penalty-rho", penalty_rho, "exterior penalty weight")
        ->capture_default_str();
    con->add_option("--penalty-beta", penalty_beta, "exterior penalty exponent")
        ->capture_default_str();

    // sweep-eta
    CommonOpts sweep_opts;
    std::string sweep_problem, sweep_ranges = "0.9:0.9,0.9:0.8,0.9:0.7,0.9:0.6";
    CLI::App* sweep = app.add_subcommand("sweep-eta", "compare linear eta ranges side by side");
    sweep->add_option("problem", sweep_problem, "function name")->required();
    sweep->add_option("--dims", sweep_opts.dims, "dimensions (0 = registry default)");
    sweep->add_option("--ranges", sweep_ranges, "comma list of eta_max:eta_min pairs")
        ->capture_default_str();
    add_epo_flags(sweep, sweep_opts);
    sweep->add_option("--out", sweep_opts.out, "export file or directory");

    // converge-study
    CommonOpts conv_opts;
    {
        const EpoConfig ref = convergence_study_config();
        conv_opts.particles = ref.particles;
        conv_opts.eta_schedule = to_string(ref.eta.mode);
        conv_opts.l_scale0 = ref.l_scale0;
        conv_opts.res = ref.res;
    }
    std::string conv_problem;
    double conv_delta = 0.5;
    std::vector<std::size_t> conv_t_values;
    std::size_t conv_trials = 100;
    CLI::App* conv = app.add_subcommand(
        "converge-study", "empirical probability of landing near the optimum vs run length");
    conv->add_option("problem", conv_problem, "function with a known minimizer")->required();
    conv->add_option("--dims", conv_opts.dims, "dimensions (0 = registry default)");
    conv->add_option("--delta", conv_delta, "infinity-norm neighborhood radius")
        ->capture_default_str();
    conv->add_option("--t-values", conv_t_values, "run lengths to test (default 50 150 500)");
    conv->add_option("--trials", conv_trials, "seeded runs per length")->capture_default_str();
    add_epo_flags(conv, conv_opts);

    // oracle
    std::string oracle_target;
    int oracle_lo = 12, oracle_hi = 60;
    std::size_t oracle_max_tuples = 16;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive ground truth for gear-train");
    oracle->add_option("problem", oracle_target, "gear-train")->required();
    oracle->add_option("--lo", oracle_lo, "lower tooth-count bound")->capture_default_str();
    oracle->add_option("--hi", oracle_hi, "upper tooth-count bound")->capture_default_str();
    oracle->add_option("--max-tuples", oracle_max_tuples, "tuples to print")
        ->capture_default_str();

    // list
    app.add_subcommand("list", "print the benchmark registry");

    // surface
    CommonOpts surf_opts;
    std::string surf_problem;
    std::size_t surf_resolution = 200;
    CLI::App* surf = app.add_subcommand("surface", "sample a 2-D function on a uniform lattice");
    surf->add_option("problem", surf_problem, "function admitting 2 dimensions")->required();
    surf->add_option("--resolution", surf_resolution, "lattice nodes per axis (>= 2)")
        ->capture_default_str();
    surf->add_option("--out", surf_opts.out, "CSV path (stdout when absent)");

    std::vector<std::string> args;
    std::vector<char*> argv2{argv[0]};
    try {
        args = apply_config_file({argv + 1, argv + argc});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    for (std::string& a : args) argv2.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (bench->parsed()) return cmd_bench(bench_opts, bench_problem, bench_trace_out);
        if (con->parsed())
            return cmd_constrained(con_opts, con_problem, truss_l, truss_p, truss_sigma,
                                   penalty_rho, penalty_beta);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_problem, sweep_ranges);
        if (conv->parsed())
            return cmd_converge(conv_opts, conv_problem, conv_delta, conv_t_values, conv_trials);
        if (oracle->parsed()) return cmd_oracle(oracle_target, oracle_lo, oracle_hi,
                                                oracle_max_tuples);
        if (app.got_subcommand("list")) return cmd_list();
        if (surf->parsed()) return cmd_surface(surf_opts, surf_problem, surf_resolution);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
