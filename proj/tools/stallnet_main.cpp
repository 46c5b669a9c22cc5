#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stallnet/error.hpp"
#include "stallnet/runner.hpp"

namespace {

using namespace stallnet;

FunctionId parse_function(const std::string& name) {
    const auto fn = function_from_string(name);
    if (!fn) throw ValidationError("unknown function: " + name);
    return *fn;
}

Algorithm parse_algorithm(const std::string& name) {
    const auto algo = algorithm_from_string(name);
    if (!algo) throw ValidationError("unknown algorithm: " + name + " (RS, DE, CMA, MBH)");
    return *algo;
}

RunManifest make_manifest(const std::vector<std::string>& functions,
                          const std::vector<int>& dims,
                          const std::vector<std::string>& algos, int runs,
                          std::uint64_t seed, std::uint64_t budget, const std::string& out) {
    RunManifest manifest;
    for (const std::string& f : functions) manifest.functions.push_back(parse_function(f));
    manifest.dimensions = dims;
    for (const std::string& a : algos) manifest.algorithms.push_back(parse_algorithm(a));
    manifest.runs_per_cell = runs;
    manifest.master_seed = seed;
    manifest.budget = budget;
    manifest.output_dir = out;
    return manifest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stallnet: run trajectory-logged optimizers on benchmark functions and build\n"
                 "attractor / search-trajectory / local-optima networks from the logs"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Run an algorithm portfolio and write one "
                                              "trajectory log file per run");
    std::vector<std::string> run_functions;
    std::vector<int> run_dims{2};
    std::vector<std::string> run_algos;
    int runs = 10;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
    std::string run_out;
    run_cmd->add_option("--function", run_functions, "Benchmark function name(s)")
        ->required()
        ->delimiter(',');
    run_cmd->add_option("--dim", run_dims, "Problem dimension(s)")->delimiter(',');
    run_cmd->add_option("--algo", run_algos, "Algorithm(s): RS, DE, CMA, MBH")
        ->required()
        ->delimiter(',');
    run_cmd->add_option("--runs", runs, "Runs per (function, dimension, algorithm) cell");
    run_cmd->add_option("--seed", seed, "Master seed; per-run seeds are derived from it");
    run_cmd->add_option("--budget", budget,
                        "Evaluations per run (0: 10000 for 2-D, 50000 above)");
    run_cmd->add_option("--out", run_out, "Output directory")->required();

    // build
    auto* build_cmd = app.add_subcommand("build", "Build one network from trajectory logs "
                                                  "and export it");
    std::vector<std::string> build_logs;
    std::string model_name = "AN";
    std::uint64_t beta = 40;
    double epsilon = 1e-5;
    std::uint64_t cadence = 1;
    std::string format_name = "graphml";
    std::string build_out;
    std::string report_path;
    build_cmd->add_option("--logs", build_logs, "Log files or globs")->required();
    build_cmd->add_option("--model", model_name, "Network model: AN, STN or LON");
    build_cmd->add_option("--beta", beta, "Stall threshold in evaluations (AN)");
    build_cmd->add_option("--epsilon", epsilon, "Coordinate precision");
    build_cmd->add_option("--k", cadence, "Generations between STN snapshots");
    build_cmd->add_option("--format", format_name, "Output format: graphml or dot");
    build_cmd->add_option("--out", build_out, "Output network file")->required();
    build_cmd->add_option("--report", report_path, "Write the build report JSON here "
                                                   "(default: stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Beta x epsilon attractor-network sweep: "
                                                  "metrics tables and overlap matrices");
    std::vector<std::string> sweep_functions;
    std::vector<int> sweep_dims{2};
    std::vector<std::string> sweep_algos;
    int sweep_runs = 30;
    std::uint64_t sweep_seed = 1;
    std::uint64_t sweep_budget = 0;
    std::string sweep_out;
    std::vector<std::uint64_t> beta_grid{10, 20, 40, 80, 160, 320, 640};
    std::vector<double> epsilon_grid{1e-2, 1e-3, 1e-4, 1e-5};
    sweep_cmd->add_option("--function", sweep_functions, "Benchmark function name(s)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--dim", sweep_dims, "Problem dimension(s)")->delimiter(',');
    sweep_cmd->add_option("--algo", sweep_algos, "Algorithm(s): RS, DE, CMA, MBH")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--runs", sweep_runs, "Runs per cell (logs reused when present)");
    sweep_cmd->add_option("--seed", sweep_seed, "Master seed");
    sweep_cmd->add_option("--budget", sweep_budget, "Evaluations per run (0: default)");
    sweep_cmd->add_option("--beta", beta_grid, "Beta grid")->delimiter(',');
    sweep_cmd->add_option("--epsilon", epsilon_grid, "Epsilon grid")->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "Output directory (logs/ and tables/)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run_cmd)) {
            const RunManifest manifest = make_manifest(run_functions, run_dims, run_algos,
                                                       runs, seed, budget, run_out);
            const RunOutput output = cmd_run(manifest);
            std::cout << "wrote " << output.log_files.size() << " log files under "
                      << (manifest.output_dir / "logs").string() << "\n";
        } else if (app.got_subcommand(build_cmd)) {
            const auto model = model_from_string(model_name);
            if (!model) throw ValidationError("unknown model: " + model_name);
            GraphFormat format;
            if (format_name == "graphml") {
                format = GraphFormat::graphml;
            } else if (format_name == "dot") {
                format = GraphFormat::dot;
            } else {
                throw ValidationError("unknown format: " + format_name);
            }
            NetworkConfig config{*model, beta, epsilon, cadence};
            const BuildOutput output = cmd_build(build_logs, config, format, build_out);
            if (report_path.empty()) {
                std::cout << output.report_json << "\n";
            } else {
                std::ofstream report(report_path, std::ios::binary);
                if (!report) throw std::runtime_error("cannot write report: " + report_path);
                report << output.report_json << "\n";
            }
        } else if (app.got_subcommand(sweep_cmd)) {
            const RunManifest manifest =
                make_manifest(sweep_functions, sweep_dims, sweep_algos, sweep_runs, sweep_seed,
                              sweep_budget, sweep_out);
            const SweepOutput output = cmd_sweep(manifest, beta_grid, epsilon_grid);
            for (const auto& path : output.metrics_files) {
                std::cout << "wrote " << path.string() << "\n";
            }
            for (const auto& path : output.overlap_files) {
                std::cout << "wrote " << path.string() << "\n";
            }
            for (const auto& err : output.errors) {
                std::cerr << "cell failed: " << err.function << " " << err.config << ": "
                          << err.message << "\n";
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
