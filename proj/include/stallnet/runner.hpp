#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stallnet/graph_export.hpp"
#include "stallnet/metrics.hpp"
#include "stallnet/netbuild.hpp"
#include "stallnet/optim.hpp"

namespace stallnet {

struct RunManifest {
    std::vector<FunctionId> functions;
    std::vector<int> dimensions;
    std::vector<Algorithm> algorithms;
    int runs_per_cell = 10;       // 10 for visualisation sets, 30 for statistics sets
    std::uint64_t master_seed = 1;
    std::uint64_t budget = 0;     // 0: per-dimension default
    std::filesystem::path output_dir;
};

// Throws ValidationError (no files touched) when the manifest is inconsistent or
// references a (function, dimension) pair outside the catalog.
void validate_manifest(const RunManifest& manifest);

std::uint64_t run_seed(const RunManifest& manifest, Algorithm algo, FunctionId fn,
                       int dimension, int run_index);

std::string log_file_name(FunctionId fn, int dimension, Algorithm algo, int run_index);

struct RunOutput {
    std::vector<std::filesystem::path> log_files;
    std::filesystem::path manifest_file;
};

// One log file per (function, dimension, algorithm, run index) under
// output_dir/logs, plus output_dir/manifest.json. Deterministic: re-running an
// identical manifest rewrites byte-identical files.
RunOutput cmd_run(const RunManifest& manifest);

struct BuildOutput {
    std::filesystem::path network_file;
    BuildReport report;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::string report_json;
};

// Loads the logs (shell-style globs expanded), builds one network, lays it out and
// writes it in the requested format. Mixed-problem logs are a validation error.
BuildOutput cmd_build(const std::vector<std::string>& log_globs, const NetworkConfig& config,
                      GraphFormat format, const std::filesystem::path& out_file);

struct SweepOutput {
    std::vector<std::filesystem::path> metrics_files;  // one per dimension
    std::vector<std::filesystem::path> overlap_files;  // one per (dimension, algorithm)
    std::vector<SweepCellError> errors;
};

// AN beta x epsilon sweep over the logs of a manifest (produced first if absent).
// Writes metrics_d<D>.csv per dimension and overlap_d<D>_<ALGO>.csv per dimension
// and algorithm under output_dir/tables.
SweepOutput cmd_sweep(const RunManifest& manifest, std::span<const std::uint64_t> beta_grid,
                      std::span<const double> epsilon_grid);

// Shell-style glob expansion (POSIX glob); passes non-wildcard paths through.
std::vector<std::filesystem::path> expand_globs(const std::vector<std::string>& patterns);

}  // namespace stallnet
