#include "perchopt/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace perchopt {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Shortest exact representation for human-facing names/headers.
std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::ofstream open_or_throw(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

void throw_if_bad(std::ostream& os, const std::filesystem::path& path) {
    if (!os)
        throw std::runtime_error("write to " + path.string() + " failed");
}

} // namespace

std::string to_string(EtaMode mode) {
    return mode == EtaMode::Derived ? "derived" : "linear";
}
std::string to_string(ShrinkMode mode) {
    return mode == ShrinkMode::EveryIteration ? "every" : "improve";
}
std::string to_string(PerturbCenter center) {
    return center == PerturbCenter::Best ? "best" : "self";
}
std::string to_string(PerturbDist dist) {
    return dist == PerturbDist::UniformSymmetric ? "uniform" : "gaussian";
}

EtaMode eta_mode_from_string(std::string_view s) {
    if (s == "derived") return EtaMode::Derived;
    if (s == "linear") return EtaMode::Linear;
    throw std::invalid_argument("unknown eta schedule '" + std::string(s) + "' (expected linear or derived)");
}
ShrinkMode shrink_mode_from_string(std::string_view s) {
    if (s == "every") return ShrinkMode::EveryIteration;
    if (s == "improve") return ShrinkMode::OnImprovement;
    throw std::invalid_argument("unknown shrink mode '" + std::string(s) + "' (expected every or improve)");
}
PerturbCenter center_from_string(std::string_view s) {
    if (s == "best") return PerturbCenter::Best;
    if (s == "self") return PerturbCenter::Self;
    throw std::invalid_argument("unknown perturbation center '" + std::string(s) + "' (expected best or self)");
}
PerturbDist dist_from_string(std::string_view s) {
    if (s == "uniform") return PerturbDist::UniformSymmetric;
    if (s == "gaussian") return PerturbDist::Gaussian;
    throw std::invalid_argument("unknown perturbation distribution '" + std::string(s) + "' (expected uniform or gaussian)");
}

std::string variant_string(const EpoConfig& config) {
    std::string v;
    if (config.eta.mode == EtaMode::Derived) {
        v = "derived";
    } else {
        v = "linear" + fmt_short(config.eta.eta_max) + "-" + fmt_short(config.eta.eta_min);
    }
    if (config.elite_count > 0) v += "-elite" + std::to_string(config.elite_count);
    return v;
}

std::string default_export_name(const ExportMeta& meta, std::string_view ext) {
    return meta.problem + "_" + variant_string(meta.config) + "_" +
           std::to_string(meta.config.seed) + "." + std::string(ext);
}

std::string provenance_line(const ExportMeta& meta) {
    const EpoConfig& c = meta.config;
    std::ostringstream os;
    os << "# perchopt problem=" << meta.problem << " dims=" << meta.dims
       << " runs=" << meta.runs << " particles=" << c.particles
       << " iterations=" << c.iterations << " l_scale0=" << fmt_short(c.l_scale0)
       << " res=" << fmt_short(c.res) << " eta=" << to_string(c.eta.mode);
    if (c.eta.mode == EtaMode::Linear)
        os << ":" << fmt_short(c.eta.eta_max) << "->" << fmt_short(c.eta.eta_min);
    os << " scale_offset=" << fmt_short(c.scale_offset) << " elite=" << c.elite_count
       << " shrink=" << to_string(c.shrink_mode) << " center=" << to_string(c.center)
       << " dist=" << to_string(c.dist) << " seed=" << c.seed << " std=population";
    return os.str();
}

void write_runs_csv(std::ostream& os, const ExperimentResult& result, const ExportMeta& meta) {
    os << provenance_line(meta) << "\n";
    os << "run_id,seed,final_y_best";
    for (std::size_t j = 0; j < meta.dims; ++j) os << ",x_best_" << j;
    os << ",evaluations,elapsed_s\n";
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const RunResult& r = result.runs[i];
        os << i << "," << r.seed << "," << fmt(r.best.value);
        for (std::size_t j = 0; j < meta.dims; ++j)
            os << "," << (j < r.best.x.size() ? fmt(r.best.x[j]) : std::string());
        os << "," << r.evaluations << "," << fmt(r.elapsed_seconds) << "\n";
    }
}

void write_runs_csv(const std::filesystem::path& path, const ExperimentResult& result,
                    const ExportMeta& meta) {
    auto os = open_or_throw(path);
    write_runs_csv(os, result, meta);
    throw_if_bad(os, path);
}

void write_trace_csv(std::ostream& os, const RunResult& run, const ExportMeta& meta) {
    os << provenance_line(meta) << " run_seed=" << run.seed << "\n";
    os << "t,y_best,l_scale\n";
    for (const TracePoint& p : run.trace)
        os << p.t << "," << fmt(p.y_best) << "," << fmt(p.l_scale) << "\n";
}

void write_trace_csv(const std::filesystem::path& path, const RunResult& run,
                     const ExportMeta& meta) {
    auto os = open_or_throw(path);
    write_trace_csv(os, run, meta);
    throw_if_bad(os, path);
}

void write_surface_csv(std::ostream& os, const SurfaceGrid& grid, const ExportMeta& meta) {
    os << provenance_line(meta) << " resolution=" << grid.resolution << "\n";
    os << "x0,x1,f\n";
    for (const auto& s : grid.samples)
        os << fmt(s[0]) << "," << fmt(s[1]) << "," << fmt(s[2]) << "\n";
}

void write_surface_csv(const std::filesystem::path& path, const SurfaceGrid& grid,
                       const ExportMeta& meta) {
    auto os = open_or_throw(path);
    write_surface_csv(os, grid, meta);
    throw_if_bad(os, path);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries,
                     const ExportMeta& meta) {
    os << provenance_line(meta) << "\n";
    os << "t";
    std::size_t points = 0;
    for (const SweepEntry& e : entries) {
        if (!e.valid) continue;
        os << ",median_y_best_eta_" << fmt_short(e.range.eta_max) << "-"
           << fmt_short(e.range.eta_min);
        points = std::max(points, e.median_trace.size());
    }
    os << "\n";
    for (std::size_t t = 0; t < points; ++t) {
        os << t;
        for (const SweepEntry& e : entries) {
            if (!e.valid) continue;
            os << "," << (t < e.median_trace.size() ? fmt(e.median_trace[t]) : std::string());
        }
        os << "\n";
    }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepEntry>& entries,
                     const ExportMeta& meta) {
    auto os = open_or_throw(path);
    write_sweep_csv(os, entries, meta);
    throw_if_bad(os, path);
}

namespace {

using nlohmann::json;

json config_to_json(const EpoConfig& c) {
    json j;
    j["particles"] = c.particles;
    j["iterations"] = c.iterations;
    j["l_scale0"] = c.l_scale0;
    j["res"] = c.res;
    j["eta_mode"] = to_string(c.eta.mode);
    j["eta_max"] = c.eta.eta_max;
    j["eta_min"] = c.eta.eta_min;
    j["scale_offset"] = c.scale_offset;
    j["elite_count"] = c.elite_count;
    j["shrink_mode"] = to_string(c.shrink_mode);
    j["center"] = to_string(c.center);
    j["dist"] = to_string(c.dist);
    j["seed"] = c.seed;
    return j;
}

EpoConfig config_from_json(const json& j) {
    EpoConfig c;
    c.particles = j.at("particles").get<std::size_t>();
    c.iterations = j.at("iterations").get<std::size_t>();
    c.l_scale0 = j.at("l_scale0").get<double>();
    c.res = j.at("res").get<double>();
    c.eta.mode = eta_mode_from_string(j.at("eta_mode").get<std::string>());
    c.eta.eta_max = j.at("eta_max").get<double>();
    c.eta.eta_min = j.at("eta_min").get<double>();
    c.scale_offset = j.at("scale_offset").get<double>();
    c.elite_count = j.at("elite_count").get<std::size_t>();
    c.shrink_mode = shrink_mode_from_string(j.at("shrink_mode").get<std::string>());
    c.center = center_from_string(j.at("center").get<std::string>());
    c.dist = dist_from_string(j.at("dist").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json stats_to_json(const ExperimentStats& s) {
    json j;
    j["x_avg"] = s.x_avg;
    j["x_std"] = s.x_std;
    j["y_avg"] = s.y_avg;
    j["y_std"] = s.y_std;
    j["run_elapsed_seconds"] = s.run_elapsed_seconds;
    j["total_elapsed_seconds"] = s.total_elapsed_seconds;
    j["seeds"] = s.seeds;
    return j;
}

ExperimentStats stats_from_json(const json& j) {
    ExperimentStats s;
    s.x_avg = j.at("x_avg").get<std::vector<double>>();
    s.x_std = j.at("x_std").get<std::vector<double>>();
    s.y_avg = j.at("y_avg").get<double>();
    s.y_std = j.at("y_std").get<double>();
    s.run_elapsed_seconds = j.at("run_elapsed_seconds").get<std::vector<double>>();
    s.total_elapsed_seconds = j.at("total_elapsed_seconds").get<double>();
    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    return s;
}

} // namespace

void write_json(std::ostream& os, const ExperimentResult& result, const ExportMeta& meta) {
    json j;
    j["problem"] = meta.problem;
    j["dims"] = meta.dims;
    j["runs_planned"] = meta.runs;
    j["variant"] = variant_string(meta.config);
    j["config"] = config_to_json(meta.config);
    j["stats"] = stats_to_json(result.stats);

    json runs = json::array();
    for (const RunResult& r : result.runs) {
        json jr;
        jr["seed"] = r.seed;
        jr["final_y_best"] = r.best.value;
        jr["x_best"] = r.best.x;
        jr["evaluations"] = r.evaluations;
        jr["elapsed_s"] = r.elapsed_seconds;
        json trace = json::array();
        for (const TracePoint& p : r.trace)
            trace.push_back({p.t, p.y_best, p.l_scale});
        jr["trace"] = std::move(trace);
        runs.push_back(std::move(jr));
    }
    j["runs"] = std::move(runs);
    os << j.dump(2) << "\n";
}

void write_json(const std::filesystem::path& path, const ExperimentResult& result,
                const ExportMeta& meta) {
    auto os = open_or_throw(path);
    write_json(os, result, meta);
    throw_if_bad(os, path);
}

ImportedExperiment read_json(std::istream& is) {
    json j;
    is >> j;

    ImportedExperiment out;
    out.meta.problem = j.at("problem").get<std::string>();
    out.meta.dims = j.at("dims").get<std::size_t>();
    out.meta.runs = j.at("runs_planned").get<std::size_t>();
    out.meta.config = config_from_json(j.at("config"));
    out.result.stats = stats_from_json(j.at("stats"));

    for (const json& jr : j.at("runs")) {
        RunResult r;
        r.seed = jr.at("seed").get<std::uint64_t>();
        r.best.value = jr.at("final_y_best").get<double>();
        r.best.x = jr.at("x_best").get<std::vector<double>>();
        r.evaluations = jr.at("evaluations").get<std::size_t>();
        r.elapsed_seconds = jr.at("elapsed_s").get<double>();
        for (const json& jp : jr.at("trace"))
            r.trace.push_back({jp.at(0).get<std::size_t>(), jp.at(1).get<double>(),
                               jp.at(2).get<double>()});
        out.result.runs.push_back(std::move(r));
    }
    return out;
}

ImportedExperiment read_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path.string() + " for reading");
    return read_json(is);
}

} // namespace perchopt
