#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "stallnet/trajectory.hpp"

namespace stallnet {

enum class Model : int { AN = 0, STN = 1, LON = 2 };

std::string_view to_string(Model m);
std::optional<Model> model_from_string(std::string_view name);

struct NetworkConfig {
    Model model = Model::AN;
    std::uint64_t beta = 40;      // stall threshold in evaluations (AN only)
    double epsilon = 1e-5;        // coordinate precision
    std::uint64_t stn_cadence_k = 1;  // generations between STN snapshots (STN only)
};

// Node identity: per-coordinate floor quantization, quantized[i] = floor(x[i] / epsilon).
// Two genotypes share a key iff all quantized coordinates match.
struct NodeKey {
    std::vector<std::int64_t> q;
    friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

NodeKey quantize(std::span<const double> x, double epsilon);

// Coordinate precision from the box and dimension: with n the largest integer such
// that (x_max - x_min) * D >= 10^n, returns 10^(n-2). Gives 1e-1 at D=2 and 1e0 at
// D=10 on [-5, 5].
double suggest_partition_factor(double x_min, double x_max, int dimension);

// An improvement event whose stall (evaluations until the next improvement, or until
// the end of the run for the last event) reached the threshold.
struct Attractor {
    ImprovementEvent event;
    std::uint64_t stall = 0;
};

std::vector<Attractor> extract_attractors(const TrajectoryLog& log, std::uint64_t beta);

// STN snapshot sequence of one run: best-so-far solution sampled every
// k * pop_size evaluations (every k evaluations for single-point algorithms).
std::vector<ImprovementEvent> stn_snapshots(const TrajectoryLog& log, std::uint64_t k);

struct NodeData {
    std::vector<double> representative;  // first-seen genotype (layout/export only)
    double best_fitness = 0.0;
    std::uint32_t run_count = 0;   // distinct runs that visited the node
    std::uint64_t stall_total = 0; // accumulated stall evaluations (AN and LON)
};

struct EdgeData {
    std::uint64_t count = 0;  // transition weight
    std::vector<std::uint64_t> differentials;  // per transition: dest evals - source evals
};

struct BuildReport {
    std::uint32_t runs_total = 0;
    std::uint32_t runs_used = 0;
    std::uint32_t runs_skipped = 0;  // runs with an empty node sequence
    std::uint64_t transitions = 0;
    std::vector<std::uint64_t> per_run_elements;   // sequence length before collapsing
    std::vector<std::uint64_t> per_run_collapsed;  // after collapsing consecutive repeats
};

struct Network {
    NetworkConfig config;
    FunctionId function_id = FunctionId::sphere;
    int dimension = 0;
    std::uint32_t run_count = 0;  // logs merged
    std::map<NodeKey, NodeData> nodes;
    std::map<std::pair<NodeKey, NodeKey>, EdgeData> edges;
    std::vector<std::pair<NodeKey, NodeKey>> run_endpoints;  // start/end key per used run
    BuildReport report;
};

// Merge the logs (processed in ascending seed order) into one network. The per-run
// node sequence is: AN attractors, STN snapshots, or all events (LON, which requires
// basin-hopping logs). Consecutive same-key elements collapse into one visit;
// consecutive distinct keys add a directed edge carrying the evaluation differential.
Network build_network(std::span<const TrajectoryLog> logs, const NetworkConfig& config,
                      const Problem& problem);

}  // namespace stallnet
