#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "perchopt/harness.hpp"

namespace perchopt {

std::string to_string(EtaMode mode);
std::string to_string(ShrinkMode mode);
std::string to_string(PerturbCenter center);
std::string to_string(PerturbDist dist);
EtaMode eta_mode_from_string(std::string_view s);
ShrinkMode shrink_mode_from_string(std::string_view s);
PerturbCenter center_from_string(std::string_view s);
PerturbDist dist_from_string(std::string_view s);

/// Provenance attached to every exported file.
struct ExportMeta {
    std::string problem;
    std::size_t dims = 0;
    std::size_t runs = 0;
    EpoConfig config;
};

/// Schedule descriptor used in file names, e.g. "linear0.9-0.8" or
/// "derived", with "-elite<n>" appended when elite averaging is on.
std::string variant_string(const EpoConfig& config);

/// "<problem>_<variant>_<baseseed>.<ext>"
std::string default_export_name(const ExportMeta& meta, std::string_view ext);

/// "# perchopt problem=... dims=... ... std=population" — the comment line
/// leading every exported file.
std::string provenance_line(const ExportMeta& meta);

/// Columns: run_id, seed, final_y_best, x_best_0..x_best_{m-1}, evaluations,
/// elapsed_s. Numbers carry full round-trip precision.
void write_runs_csv(std::ostream& os, const ExperimentResult& result, const ExportMeta& meta);
void write_runs_csv(const std::filesystem::path& path, const ExperimentResult& result,
                    const ExportMeta& meta);

/// Columns: t, y_best, l_scale.
void write_trace_csv(std::ostream& os, const RunResult& run, const ExportMeta& meta);
void write_trace_csv(const std::filesystem::path& path, const RunResult& run,
                     const ExportMeta& meta);

/// Columns: x0, x1, f.
void write_surface_csv(std::ostream& os, const SurfaceGrid& grid, const ExportMeta& meta);
void write_surface_csv(const std::filesystem::path& path, const SurfaceGrid& grid,
                       const ExportMeta& meta);

/// Aligned sweep grid: column t plus one median-y_best column per valid range.
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries,
                     const ExportMeta& meta);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepEntry>& entries,
                     const ExportMeta& meta);

/// JSON mirror of the CSV fields (plus full traces and stats).
void write_json(std::ostream& os, const ExperimentResult& result, const ExportMeta& meta);
void write_json(const std::filesystem::path& path, const ExperimentResult& result,
                const ExportMeta& meta);

struct ImportedExperiment {
    ExportMeta meta;
    ExperimentResult result;
};

/// Inverse of write_json; numbers reproduce bit-for-bit.
ImportedExperiment read_json(const std::filesystem::path& path);
ImportedExperiment read_json(std::istream& is);

} // namespace perchopt
