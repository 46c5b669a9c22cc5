#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stallnet/error.hpp"
#include "stallnet/graph_export.hpp"
#include "stallnet/layout.hpp"
#include "stallnet/log_io.hpp"
#include "stallnet/metrics.hpp"
#include "stallnet/netbuild.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"
#include "stallnet/runner.hpp"
#include "stallnet/tables.hpp"

namespace py = pybind11;
using namespace stallnet;

namespace {

std::vector<std::pair<Problem, std::vector<TrajectoryLog>>> to_sweep_input(
    const std::vector<std::pair<Problem, std::vector<TrajectoryLog>>>& input) {
    return input;
}

}  // namespace

PYBIND11_MODULE(_stallnet, m) {
    m.doc() = "Trajectory-logged optimizer runs and attractor/STN/LON network analysis";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::enum_<FunctionId>(m, "FunctionId")
        .value("sphere", FunctionId::sphere)
        .value("rosenbrock", FunctionId::rosenbrock)
        .value("rastrigin", FunctionId::rastrigin)
        .value("schaffer_f7", FunctionId::schaffer_f7)
        .value("gallagher", FunctionId::gallagher)
        .value("constant", FunctionId::constant);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("RS", Algorithm::random_search)
        .value("DE", Algorithm::differential_evolution)
        .value("CMA", Algorithm::cmaes)
        .value("MBH", Algorithm::basin_hopping);

    py::enum_<Model>(m, "Model")
        .value("AN", Model::AN)
        .value("STN", Model::STN)
        .value("LON", Model::LON);

    py::enum_<GraphFormat>(m, "GraphFormat")
        .value("graphml", GraphFormat::graphml)
        .value("dot", GraphFormat::dot);

    py::enum_<LayoutMethod>(m, "LayoutMethod")
        .value("direct_2d", LayoutMethod::direct_2d)
        .value("classical_mds", LayoutMethod::classical_mds);

    py::class_<Problem>(m, "Problem")
        .def_static("make", &Problem::make, py::arg("function"), py::arg("dimension"),
                    py::arg("shift_seed") = std::nullopt)
        .def("evaluate",
             [](const Problem& p, const std::vector<double>& x) { return p.evaluate(x); },
             py::arg("x"))
        .def_property_readonly("function_id", &Problem::function_id)
        .def_property_readonly("dimension", &Problem::dimension)
        .def_property_readonly("lower_bound", &Problem::lower_bound)
        .def_property_readonly("upper_bound", &Problem::upper_bound)
        .def_property_readonly("f_opt", &Problem::f_opt)
        .def_property_readonly("x_opt", &Problem::x_opt)
        .def_property_readonly("evaluations", &Problem::evaluations)
        .def("__repr__", [](const Problem& p) {
            return "Problem(" + std::string(to_string(p.function_id())) + ", D=" +
                   std::to_string(p.dimension()) + ")";
        });

    m.def("catalog", &catalog);
    m.def("catalog_problem", &catalog_problem, py::arg("function"), py::arg("dimension"));

    py::class_<ImprovementEvent>(m, "ImprovementEvent")
        .def(py::init<>())
        .def_readwrite("evals", &ImprovementEvent::evals)
        .def_readwrite("fitness", &ImprovementEvent::fitness)
        .def_readwrite("genotype", &ImprovementEvent::genotype);

    py::class_<TrajectoryLog>(m, "TrajectoryLog")
        .def(py::init<>())
        .def_readwrite("algorithm", &TrajectoryLog::algorithm)
        .def_readwrite("function_id", &TrajectoryLog::function_id)
        .def_readwrite("dimension", &TrajectoryLog::dimension)
        .def_readwrite("seed", &TrajectoryLog::seed)
        .def_readwrite("budget", &TrajectoryLog::budget)
        .def_readwrite("pop_size", &TrajectoryLog::pop_size)
        .def_readwrite("final_evals", &TrajectoryLog::final_evals)
        .def_readwrite("events", &TrajectoryLog::events)
        .def("__len__", [](const TrajectoryLog& log) { return log.events.size(); });

    m.def("validate_log", &validate_log);
    m.def("serialize_log", &serialize_log);
    m.def("write_log_file", &write_log_file, py::arg("log"), py::arg("path"));
    m.def("read_log_file", &read_log_file, py::arg("path"));

    py::class_<DEParams>(m, "DEParams")
        .def(py::init<>())
        .def_readwrite("pop_size", &DEParams::pop_size)
        .def_readwrite("scale_factor", &DEParams::scale_factor)
        .def_readwrite("crossover_rate", &DEParams::crossover_rate);

    py::class_<CMAParams>(m, "CMAParams")
        .def(py::init<>())
        .def_readwrite("lambda_", &CMAParams::lambda)
        .def_readwrite("sigma0", &CMAParams::sigma0);

    py::class_<MBHParams>(m, "MBHParams")
        .def(py::init<>())
        .def_readwrite("stall_limit", &MBHParams::stall_limit)
        .def_readwrite("perturbation_scale", &MBHParams::perturbation_scale);

    m.def("default_population", &default_population, py::arg("dimension"));
    m.def("default_budget", &default_budget, py::arg("dimension"));
    m.def("run_random_search", &run_random_search, py::arg("problem"), py::arg("budget"),
          py::arg("seed"));
    m.def("run_de", &run_de, py::arg("problem"), py::arg("budget"), py::arg("seed"),
          py::arg("params") = DEParams{});
    m.def("run_cmaes", &run_cmaes, py::arg("problem"), py::arg("budget"), py::arg("seed"),
          py::arg("params") = CMAParams{});
    m.def("run_basin_hopping", &run_basin_hopping, py::arg("problem"), py::arg("budget"),
          py::arg("seed"), py::arg("params") = MBHParams{});
    m.def("run_algorithm", &run_algorithm, py::arg("algorithm"), py::arg("problem"),
          py::arg("budget"), py::arg("seed"));

    py::class_<NetworkConfig>(m, "NetworkConfig")
        .def(py::init([](Model model, std::uint64_t beta, double epsilon, std::uint64_t k) {
                 return NetworkConfig{model, beta, epsilon, k};
             }),
             py::arg("model") = Model::AN, py::arg("beta") = 40,
             py::arg("epsilon") = 1e-5, py::arg("k") = 1)
        .def_readwrite("model", &NetworkConfig::model)
        .def_readwrite("beta", &NetworkConfig::beta)
        .def_readwrite("epsilon", &NetworkConfig::epsilon)
        .def_readwrite("k", &NetworkConfig::stn_cadence_k);

    py::class_<NodeKey>(m, "NodeKey")
        .def(py::init<>())
        .def_readonly("q", &NodeKey::q)
        .def("__eq__", [](const NodeKey& a, const NodeKey& b) { return a == b; })
        .def("__lt__", [](const NodeKey& a, const NodeKey& b) { return a < b; })
        .def("__hash__",
             [](const NodeKey& key) {
                 std::size_t h = 1469598103934665603ULL;
                 for (std::int64_t v : key.q) {
                     h ^= static_cast<std::size_t>(v);
                     h *= 1099511628211ULL;
                 }
                 return h;
             })
        .def("__repr__", [](const NodeKey& key) {
            std::string s = "NodeKey([";
            for (std::size_t i = 0; i < key.q.size(); ++i) {
                if (i) s += ", ";
                s += std::to_string(key.q[i]);
            }
            return s + "])";
        });

    m.def("quantize",
          [](const std::vector<double>& x, double epsilon) { return quantize(x, epsilon); },
          py::arg("x"), py::arg("epsilon"));
    m.def("suggest_partition_factor", &suggest_partition_factor, py::arg("x_min"),
          py::arg("x_max"), py::arg("dimension"));

    py::class_<Attractor>(m, "Attractor")
        .def_readonly("event", &Attractor::event)
        .def_readonly("stall", &Attractor::stall);

    m.def("extract_attractors", &extract_attractors, py::arg("log"), py::arg("beta"));
    m.def("stn_snapshots", &stn_snapshots, py::arg("log"), py::arg("k"));

    py::class_<NodeData>(m, "NodeData")
        .def_readonly("representative", &NodeData::representative)
        .def_readonly("best_fitness", &NodeData::best_fitness)
        .def_readonly("run_count", &NodeData::run_count)
        .def_readonly("stall_total", &NodeData::stall_total);

    py::class_<EdgeData>(m, "EdgeData")
        .def_readonly("count", &EdgeData::count)
        .def_readonly("differentials", &EdgeData::differentials);

    py::class_<BuildReport>(m, "BuildReport")
        .def_readonly("runs_total", &BuildReport::runs_total)
        .def_readonly("runs_used", &BuildReport::runs_used)
        .def_readonly("runs_skipped", &BuildReport::runs_skipped)
        .def_readonly("transitions", &BuildReport::transitions)
        .def_readonly("per_run_elements", &BuildReport::per_run_elements)
        .def_readonly("per_run_collapsed", &BuildReport::per_run_collapsed);

    py::class_<Network>(m, "Network")
        .def_readonly("config", &Network::config)
        .def_readonly("function_id", &Network::function_id)
        .def_readonly("dimension", &Network::dimension)
        .def_readonly("run_count", &Network::run_count)
        .def_readonly("nodes", &Network::nodes)
        .def_readonly("edges", &Network::edges)
        .def_readonly("run_endpoints", &Network::run_endpoints)
        .def_readonly("report", &Network::report)
        .def("__repr__", [](const Network& net) {
            return "Network(" + std::string(to_string(net.config.model)) + ", nodes=" +
                   std::to_string(net.nodes.size()) + ", edges=" +
                   std::to_string(net.edges.size()) + ")";
        });

    m.def("build_network",
          [](const std::vector<TrajectoryLog>& logs, const NetworkConfig& config,
             const Problem& problem) { return build_network(logs, config, problem); },
          py::arg("logs"), py::arg("config"), py::arg("problem"));

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("median", &SummaryStats::median)
        .def_readonly("iqr", &SummaryStats::iqr)
        .def_readonly("n", &SummaryStats::n);

    py::class_<OverlapResult>(m, "OverlapResult")
        .def_readonly("matched", &OverlapResult::matched)
        .def_readonly("total_vertical", &OverlapResult::total_vertical)
        .def_readonly("proportion", &OverlapResult::proportion)
        .def_readonly("requantized", &OverlapResult::requantized)
        .def_readonly("epsilon_used", &OverlapResult::epsilon_used);

    m.def("aggregate",
          [](const std::vector<double>& values) { return aggregate(values); },
          py::arg("values"));
    m.def("network_size", &network_size);
    m.def("median_edge_differential", &median_edge_differential);
    m.def("node_overlap", &node_overlap, py::arg("vertical"), py::arg("horizontal"));
    m.def("node_overlap_at", &node_overlap_at, py::arg("vertical"), py::arg("horizontal"),
          py::arg("epsilon"));
    m.def("contains_global_optimum", &contains_global_optimum, py::arg("network"),
          py::arg("problem"), py::arg("fitness_tol") = 1e-8);

    py::class_<MetricsRow>(m, "MetricsRow")
        .def_readonly("function_id", &MetricsRow::function_id)
        .def_readonly("dimension", &MetricsRow::dimension)
        .def_readonly("algorithm", &MetricsRow::algorithm)
        .def_readonly("model", &MetricsRow::model)
        .def_readonly("beta", &MetricsRow::beta)
        .def_readonly("epsilon", &MetricsRow::epsilon)
        .def_readonly("nodes", &MetricsRow::nodes)
        .def_readonly("edges", &MetricsRow::edges)
        .def_readonly("md", &MetricsRow::md)
        .def_readonly("gopt_present", &MetricsRow::gopt_present);

    py::class_<SweepCellError>(m, "SweepCellError")
        .def_readonly("function", &SweepCellError::function)
        .def_readonly("config", &SweepCellError::config)
        .def_readonly("message", &SweepCellError::message);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("config_labels", &SweepResult::config_labels)
        .def_readonly("overlap_median", &SweepResult::overlap_median)
        .def_readonly("errors", &SweepResult::errors);

    m.def("sweep_matrix",
          [](const std::vector<std::pair<Problem, std::vector<TrajectoryLog>>>& input,
             const std::vector<NetworkConfig>& configs) {
              return sweep_matrix(to_sweep_input(input), configs);
          },
          py::arg("logs_by_function"), py::arg("configs"));
    m.def("config_label", &config_label);

    py::class_<LayoutedNetwork>(m, "LayoutedNetwork")
        .def_readonly("network", &LayoutedNetwork::network)
        .def_readonly("positions", &LayoutedNetwork::positions)
        .def_readonly("layout_method", &LayoutedNetwork::layout_method);

    m.def("layout", &layout, py::arg("network"));
    m.def("export_graphml", &export_graphml);
    m.def("export_dot", &export_dot);
    m.def("export_graph", &export_graph, py::arg("layouted_network"), py::arg("format"));
    m.def("metrics_csv",
          [](const std::vector<MetricsRow>& rows) { return metrics_csv(rows); },
          py::arg("rows"));

    py::class_<RunManifest>(m, "RunManifest")
        .def(py::init<>())
        .def_readwrite("functions", &RunManifest::functions)
        .def_readwrite("dimensions", &RunManifest::dimensions)
        .def_readwrite("algorithms", &RunManifest::algorithms)
        .def_readwrite("runs_per_cell", &RunManifest::runs_per_cell)
        .def_readwrite("master_seed", &RunManifest::master_seed)
        .def_readwrite("budget", &RunManifest::budget)
        .def_property(
            "output_dir",
            [](const RunManifest& manifest) { return manifest.output_dir.string(); },
            [](RunManifest& manifest, const std::string& path) {
                manifest.output_dir = path;
            });

    m.def("run_seed", &run_seed, py::arg("manifest"), py::arg("algorithm"),
          py::arg("function"), py::arg("dimension"), py::arg("run_index"));
    m.def("log_file_name", &log_file_name, py::arg("function"), py::arg("dimension"),
          py::arg("algorithm"), py::arg("run_index"));
    m.def("cmd_run", [](const RunManifest& manifest) {
        const RunOutput out = cmd_run(manifest);
        py::dict d;
        std::vector<std::string> files;
        for (const auto& p : out.log_files) files.push_back(p.string());
        d["log_files"] = files;
        d["manifest_file"] = out.manifest_file.string();
        return d;
    });
    m.def("cmd_build",
          [](const std::vector<std::string>& globs, const NetworkConfig& config,
             GraphFormat format, const std::string& out_file) {
              const BuildOutput out = cmd_build(globs, config, format, out_file);
              py::dict d;
              d["network_file"] = out.network_file.string();
              d["nodes"] = out.nodes;
              d["edges"] = out.edges;
              d["report_json"] = out.report_json;
              return d;
          },
          py::arg("log_globs"), py::arg("config"), py::arg("format"), py::arg("out_file"));
    m.def("cmd_sweep",
          [](const RunManifest& manifest, const std::vector<std::uint64_t>& beta_grid,
             const std::vector<double>& epsilon_grid) {
              const SweepOutput out = cmd_sweep(manifest, beta_grid, epsilon_grid);
              py::dict d;
              std::vector<std::string> metrics, overlaps;
              for (const auto& p : out.metrics_files) metrics.push_back(p.string());
              for (const auto& p : out.overlap_files) overlaps.push_back(p.string());
              d["metrics_files"] = metrics;
              d["overlap_files"] = overlaps;
              d["errors"] = out.errors;
              return d;
          },
          py::arg("manifest"), py::arg("beta_grid"), py::arg("epsilon_grid"));

    m.def("derive_seed", [](std::uint64_t master, const std::vector<std::uint64_t>& tokens) {
        std::uint64_t s = mix64(master);
        for (std::uint64_t t : tokens) s = mix64(s ^ mix64(t));
        return s;
    });
}
