#include "stallnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "stallnet/error.hpp"
#include "stallnet/numfmt.hpp"
#include "stallnet/worker_pool.hpp"

namespace stallnet {
namespace {

double quantile_type7(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::set<NodeKey> requantized_keys(const Network& net, double epsilon) {
    std::set<NodeKey> keys;
    for (const auto& [key, data] : net.nodes) keys.insert(quantize(data.representative, epsilon));
    return keys;
}

}  // namespace

SummaryStats aggregate(std::span<const double> values) {
    if (values.empty()) throw ValidationError("aggregate: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    SummaryStats stats;
    stats.n = sorted.size();
    stats.median = quantile_type7(sorted, 0.5);
    stats.iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
    return stats;
}

std::pair<std::size_t, std::size_t> network_size(const Network& net) {
    return {net.nodes.size(), net.edges.size()};
}

std::optional<double> median_edge_differential(const Network& net) {
    std::vector<double> diffs;
    for (const auto& [key, edge] : net.edges) {
        for (std::uint64_t d : edge.differentials) diffs.push_back(static_cast<double>(d));
    }
    if (diffs.empty()) return std::nullopt;
    return aggregate(diffs).median;
}

OverlapResult node_overlap(const Network& vertical, const Network& horizontal) {
    if (vertical.config.epsilon != horizontal.config.epsilon) {
        throw ValidationError(
            "node_overlap: networks were built at different epsilon; use node_overlap_at");
    }
    OverlapResult out;
    out.epsilon_used = vertical.config.epsilon;
    out.total_vertical = vertical.nodes.size();
    for (const auto& [key, data] : vertical.nodes) {
        if (horizontal.nodes.contains(key)) ++out.matched;
    }
    out.proportion = out.total_vertical == 0
                         ? 0.0
                         : static_cast<double>(out.matched) /
                               static_cast<double>(out.total_vertical);
    return out;
}

OverlapResult node_overlap_at(const Network& vertical, const Network& horizontal,
                              double epsilon_compare) {
    if (!(epsilon_compare > 0.0)) throw ValidationError("node_overlap_at: epsilon must be positive");
    const std::set<NodeKey> v = requantized_keys(vertical, epsilon_compare);
    const std::set<NodeKey> h = requantized_keys(horizontal, epsilon_compare);
    OverlapResult out;
    out.requantized = true;
    out.epsilon_used = epsilon_compare;
    out.total_vertical = v.size();
    for (const NodeKey& key : v) {
        if (h.contains(key)) ++out.matched;
    }
    out.proportion = out.total_vertical == 0
                         ? 0.0
                         : static_cast<double>(out.matched) /
                               static_cast<double>(out.total_vertical);
    return out;
}

bool contains_global_optimum(const Network& net, const Problem& problem, double fitness_tol) {
    for (const auto& [key, data] : net.nodes) {
        if (data.best_fitness <= problem.f_opt() + fitness_tol) return true;
    }
    return false;
}

std::string config_label(const NetworkConfig& config) {
    std::string label{to_string(config.model)};
    if (config.model == Model::AN) {
        label += "_b" + std::to_string(config.beta);
    } else if (config.model == Model::STN) {
        label += "_k" + std::to_string(config.stn_cadence_k);
    }
    label += "_e" + format_double(config.epsilon);
    return label;
}

SweepResult sweep_matrix(
    const std::vector<std::pair<Problem, std::vector<TrajectoryLog>>>& logs_by_function,
    std::span<const NetworkConfig> configs) {
    if (configs.empty()) throw ValidationError("sweep: configs must be non-empty");

    SweepResult result;
    for (const NetworkConfig& c : configs) result.config_labels.push_back(config_label(c));

    const std::size_t nf = logs_by_function.size();
    const std::size_t nc = configs.size();
    struct Cell {
        std::optional<Network> net;
        std::optional<MetricsRow> row;
        std::string error;
    };
    std::vector<Cell> cells(nf * nc);

    parallel_for(nf * nc, [&](std::size_t idx) {
        const std::size_t fi = idx / nc;
        const std::size_t ci = idx % nc;
        const auto& [problem, logs] = logs_by_function[fi];
        Cell& cell = cells[idx];
        try {
            Network net = build_network(logs, configs[ci], problem);
            MetricsRow row;
            row.function_id = problem.function_id();
            row.dimension = problem.dimension();
            row.algorithm = logs.empty() ? Algorithm::random_search : logs.front().algorithm;
            row.model = configs[ci].model;
            row.beta = configs[ci].model == Model::AN ? configs[ci].beta : 0;
            row.epsilon = configs[ci].epsilon;
            std::tie(row.nodes, row.edges) = network_size(net);
            row.md = median_edge_differential(net);
            row.gopt_present = contains_global_optimum(net, problem);
            cell.row = row;
            cell.net = std::move(net);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    for (std::size_t fi = 0; fi < nf; ++fi) {
        for (std::size_t ci = 0; ci < nc; ++ci) {
            Cell& cell = cells[fi * nc + ci];
            if (cell.row) {
                result.rows.push_back(*cell.row);
            } else {
                result.errors.push_back(SweepCellError{
                    std::string(to_string(logs_by_function[fi].first.function_id())),
                    result.config_labels[ci], cell.error});
            }
        }
    }

    // Pairwise config overlap, median over the functions where both cells built.
    result.overlap_median.assign(nc, std::vector<double>(nc, 0.0));
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            std::vector<double> props;
            for (std::size_t fi = 0; fi < nf; ++fi) {
                const Cell& a = cells[fi * nc + i];
                const Cell& b = cells[fi * nc + j];
                if (!a.net || !b.net) continue;
                const double eps = std::max(configs[i].epsilon, configs[j].epsilon);
                props.push_back(node_overlap_at(*a.net, *b.net, eps).proportion);
            }
            result.overlap_median[i][j] =
                props.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : aggregate(props).median;
        }
    }
    return result;
}

}  // namespace stallnet
