#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stallnet/netbuild.hpp"

namespace stallnet {

struct SummaryStats {
    double median = 0.0;
    double iqr = 0.0;  // Q3 - Q1, type-7 quantiles
    std::size_t n = 0;
};

// Median by the midpoint rule, quartiles by linear interpolation between order
// statistics (type 7). Throws ValidationError on empty input.
SummaryStats aggregate(std::span<const double> values);

std::pair<std::size_t, std::size_t> network_size(const Network& net);

// Median over the multiset of all per-transition differentials; absent when the
// network has no edges.
std::optional<double> median_edge_differential(const Network& net);

struct OverlapResult {
    std::size_t matched = 0;
    std::size_t total_vertical = 0;
    double proportion = 0.0;  // matched / total_vertical, 0 when total_vertical == 0
    bool requantized = false;
    double epsilon_used = 0.0;
};

// Fraction of the vertical network's node keys also present in the horizontal one.
// Requires both networks built at the same epsilon; use node_overlap_at otherwise.
OverlapResult node_overlap(const Network& vertical, const Network& horizontal);

// Cross-precision comparison: both sides' representative genotypes are re-quantized
// at epsilon_compare (use the coarser of the two construction precisions).
OverlapResult node_overlap_at(const Network& vertical, const Network& horizontal,
                              double epsilon_compare);

bool contains_global_optimum(const Network& net, const Problem& problem,
                             double fitness_tol = 1e-8);

struct MetricsRow {
    FunctionId function_id = FunctionId::sphere;
    int dimension = 0;
    Algorithm algorithm = Algorithm::random_search;
    Model model = Model::AN;
    std::uint64_t beta = 0;
    double epsilon = 0.0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::optional<double> md;
    bool gopt_present = false;
};

std::string config_label(const NetworkConfig& config);

struct SweepCellError {
    std::string function;
    std::string config;
    std::string message;
};

struct SweepResult {
    std::vector<MetricsRow> rows;             // function-major, config-minor order
    std::vector<std::string> config_labels;
    // overlap_median[i][j]: median over functions of the node overlap of config i
    // (vertical) against config j (horizontal); NaN when no function built both.
    std::vector<std::vector<double>> overlap_median;
    std::vector<SweepCellError> errors;
};

// One network per (function, config) cell, built in parallel; per-cell failures are
// recorded and the sweep continues. Logs of one entry must all belong to the problem
// given with them.
SweepResult sweep_matrix(
    const std::vector<std::pair<Problem, std::vector<TrajectoryLog>>>& logs_by_function,
    std::span<const NetworkConfig> configs);

}  // namespace stallnet
