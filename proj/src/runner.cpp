#include "stallnet/runner.hpp"

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "stallnet/rng.hpp"

#include "stallnet/error.hpp"
#include "stallnet/log_io.hpp"
#include "stallnet/numfmt.hpp"
#include "stallnet/tables.hpp"
#include "stallnet/worker_pool.hpp"

namespace stallnet {
namespace fs = std::filesystem;

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string manifest_json(const RunManifest& manifest,
                          const std::vector<std::string>& file_names,
                          const std::vector<Problem>& problems) {
    std::string out = "{\n  \"format\": \"stallnet-manifest\",\n  \"version\": 1,\n";
    out += "  \"master_seed\": " + std::to_string(manifest.master_seed) + ",\n";
    out += "  \"runs_per_cell\": " + std::to_string(manifest.runs_per_cell) + ",\n";
    out += "  \"budget\": " + std::to_string(manifest.budget) + ",\n";
    out += "  \"generator\": \"";
    out += kGeneratorName;
    out += "\",\n  \"functions\": [";
    for (std::size_t i = 0; i < manifest.functions.size(); ++i) {
        out += (i ? ", \"" : "\"");
        out += to_string(manifest.functions[i]);
        out += '"';
    }
    out += "],\n  \"dimensions\": [";
    for (std::size_t i = 0; i < manifest.dimensions.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(manifest.dimensions[i]);
    }
    out += "],\n  \"algorithms\": [";
    for (std::size_t i = 0; i < manifest.algorithms.size(); ++i) {
        out += (i ? ", \"" : "\"");
        out += to_string(manifest.algorithms[i]);
        out += '"';
    }
    out += "],\n  \"problems\": [\n";
    for (std::size_t i = 0; i < problems.size(); ++i) {
        const Problem& p = problems[i];
        out += "    {\"function\": \"";
        out += to_string(p.function_id());
        out += "\", \"dimension\": " + std::to_string(p.dimension());
        out += ", \"lower\": " + format_double(p.lower_bound());
        out += ", \"upper\": " + format_double(p.upper_bound());
        out += ", \"f_opt\": " + format_double(p.f_opt());
        out += ", \"x_opt\": [";
        for (std::size_t k = 0; k < p.x_opt().size(); ++k) {
            if (k) out += ", ";
            append_double(out, p.x_opt()[k]);
        }
        out += "]}";
        out += (i + 1 < problems.size()) ? ",\n" : "\n";
    }
    out += "  ],\n  \"files\": [\n";
    for (std::size_t i = 0; i < file_names.size(); ++i) {
        out += "    \"" + file_names[i] + '"';
        out += (i + 1 < file_names.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

struct RunTask {
    FunctionId fn;
    int dim;
    Algorithm algo;
    int index;
};

std::vector<RunTask> manifest_tasks(const RunManifest& manifest) {
    std::vector<RunTask> tasks;
    for (FunctionId fn : manifest.functions) {
        for (int dim : manifest.dimensions) {
            for (Algorithm algo : manifest.algorithms) {
                for (int i = 0; i < manifest.runs_per_cell; ++i) {
                    tasks.push_back(RunTask{fn, dim, algo, i});
                }
            }
        }
    }
    return tasks;
}

}  // namespace

void validate_manifest(const RunManifest& manifest) {
    if (manifest.functions.empty()) throw ValidationError("manifest: no functions");
    if (manifest.dimensions.empty()) throw ValidationError("manifest: no dimensions");
    if (manifest.algorithms.empty()) throw ValidationError("manifest: no algorithms");
    if (manifest.runs_per_cell < 1) throw ValidationError("manifest: runs_per_cell must be >= 1");
    if (manifest.output_dir.empty()) throw ValidationError("manifest: output directory not set");
    for (FunctionId fn : manifest.functions) {
        for (int dim : manifest.dimensions) {
            catalog_problem(fn, dim);  // throws when outside the catalog
        }
    }
}

std::uint64_t run_seed(const RunManifest& manifest, Algorithm algo, FunctionId fn,
                       int dimension, int run_index) {
    return derive_seed(manifest.master_seed,
                       {static_cast<std::uint64_t>(algo), static_cast<std::uint64_t>(fn),
                        static_cast<std::uint64_t>(dimension),
                        static_cast<std::uint64_t>(run_index)});
}

std::string log_file_name(FunctionId fn, int dimension, Algorithm algo, int run_index) {
    char idx[8];
    std::snprintf(idx, sizeof(idx), "%03d", run_index);
    return std::string(to_string(fn)) + "_d" + std::to_string(dimension) + "_" +
           std::string(to_string(algo)) + "_r" + idx + ".jsonl";
}

RunOutput cmd_run(const RunManifest& manifest) {
    validate_manifest(manifest);

    std::map<std::pair<FunctionId, int>, Problem> problems;
    std::vector<Problem> problem_list;
    for (FunctionId fn : manifest.functions) {
        for (int dim : manifest.dimensions) {
            auto [it, inserted] = problems.try_emplace({fn, dim}, catalog_problem(fn, dim));
            if (inserted) problem_list.push_back(it->second);
        }
    }

    const fs::path logs_dir = manifest.output_dir / "logs";
    fs::create_directories(logs_dir);

    const std::vector<RunTask> tasks = manifest_tasks(manifest);
    std::vector<std::string> names(tasks.size());
    RunOutput output;
    output.log_files.resize(tasks.size());

    parallel_for(tasks.size(), [&](std::size_t i) {
        const RunTask& task = tasks[i];
        const Problem& problem = problems.at({task.fn, task.dim});
        const std::uint64_t budget =
            manifest.budget > 0 ? manifest.budget : default_budget(task.dim);
        const std::uint64_t seed = run_seed(manifest, task.algo, task.fn, task.dim, task.index);
        const TrajectoryLog log = run_algorithm(task.algo, problem, budget, seed);
        names[i] = log_file_name(task.fn, task.dim, task.algo, task.index);
        const fs::path path = logs_dir / names[i];
        write_log_file(log, path);
        output.log_files[i] = path;
    });

    output.manifest_file = manifest.output_dir / "manifest.json";
    write_text_file(output.manifest_file, manifest_json(manifest, names, problem_list));
    return output;
}

std::vector<fs::path> expand_globs(const std::vector<std::string>& patterns) {
    std::vector<fs::path> out;
    for (const std::string& pattern : patterns) {
        if (pattern.find_first_of("*?[") == std::string::npos) {
            out.emplace_back(pattern);
            continue;
        }
        ::glob_t g{};
        const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
        if (rc == 0) {
            for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
        }
        ::globfree(&g);
        if (rc != 0 && rc != GLOB_NOMATCH) {
            throw std::runtime_error("glob failed for pattern: " + pattern);
        }
    }
    return out;
}

BuildOutput cmd_build(const std::vector<std::string>& log_globs, const NetworkConfig& config,
                      GraphFormat format, const fs::path& out_file) {
    const std::vector<fs::path> paths = expand_globs(log_globs);
    if (paths.empty()) throw ValidationError("build: no log files matched");

    std::vector<TrajectoryLog> logs;
    logs.reserve(paths.size());
    for (const fs::path& path : paths) logs.push_back(read_log_file(path));
    for (const TrajectoryLog& log : logs) {
        if (log.function_id != logs.front().function_id ||
            log.dimension != logs.front().dimension) {
            throw ValidationError("build: logs mix different problems");
        }
    }
    const Problem problem = Problem::make(logs.front().function_id, logs.front().dimension);

    const Network net = build_network(logs, config, problem);
    const LayoutedNetwork lnet = layout(net);
    if (!out_file.parent_path().empty()) fs::create_directories(out_file.parent_path());
    write_text_file(out_file, export_graph(lnet, format));

    BuildOutput out;
    out.network_file = out_file;
    out.report = net.report;
    out.nodes = net.nodes.size();
    out.edges = net.edges.size();
    out.report_json = "{\"nodes\": " + std::to_string(out.nodes) +
                      ", \"edges\": " + std::to_string(out.edges) +
                      ", \"transitions\": " + std::to_string(net.report.transitions) +
                      ", \"runs\": " + std::to_string(net.report.runs_total) +
                      ", \"runs_used\": " + std::to_string(net.report.runs_used) +
                      ", \"runs_skipped\": " + std::to_string(net.report.runs_skipped) + "}";
    return out;
}

SweepOutput cmd_sweep(const RunManifest& manifest, std::span<const std::uint64_t> beta_grid,
                      std::span<const double> epsilon_grid) {
    validate_manifest(manifest);
    if (beta_grid.empty()) throw ValidationError("sweep: beta grid is empty");
    if (epsilon_grid.empty()) throw ValidationError("sweep: epsilon grid is empty");

    // Reuse logs when the full set is already on disk, produce them otherwise.
    const fs::path logs_dir = manifest.output_dir / "logs";
    bool all_present = fs::is_directory(logs_dir);
    if (all_present) {
        for (const RunTask& task : manifest_tasks(manifest)) {
            if (!fs::exists(logs_dir /
                            log_file_name(task.fn, task.dim, task.algo, task.index))) {
                all_present = false;
                break;
            }
        }
    }
    if (!all_present) cmd_run(manifest);

    std::vector<NetworkConfig> configs;
    for (std::uint64_t beta : beta_grid) {
        for (double eps : epsilon_grid) {
            configs.push_back(NetworkConfig{Model::AN, beta, eps, 1});
        }
    }

    const fs::path tables_dir = manifest.output_dir / "tables";
    fs::create_directories(tables_dir);

    SweepOutput output;
    for (int dim : manifest.dimensions) {
        std::vector<MetricsRow> dim_rows;
        for (Algorithm algo : manifest.algorithms) {
            std::vector<std::pair<Problem, std::vector<TrajectoryLog>>> by_function;
            for (FunctionId fn : manifest.functions) {
                std::vector<TrajectoryLog> logs;
                for (int i = 0; i < manifest.runs_per_cell; ++i) {
                    logs.push_back(read_log_file(logs_dir / log_file_name(fn, dim, algo, i)));
                }
                by_function.emplace_back(catalog_problem(fn, dim), std::move(logs));
            }
            SweepResult result = sweep_matrix(by_function, configs);
            dim_rows.insert(dim_rows.end(), result.rows.begin(), result.rows.end());
            output.errors.insert(output.errors.end(), result.errors.begin(),
                                 result.errors.end());

            const fs::path overlap_path =
                tables_dir / ("overlap_d" + std::to_string(dim) + "_" +
                              std::string(to_string(algo)) + ".csv");
            write_text_file(overlap_path,
                            overlap_csv(result.config_labels, result.overlap_median));
            output.overlap_files.push_back(overlap_path);
        }
        const fs::path metrics_path = tables_dir / ("metrics_d" + std::to_string(dim) + ".csv");
        write_text_file(metrics_path, metrics_csv(dim_rows));
        output.metrics_files.push_back(metrics_path);
    }
    return output;
}

}  // namespace stallnet
