#include "stallnet/netbuild.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "stallnet/error.hpp"

namespace stallnet {

std::string_view to_string(Model m) {
    switch (m) {
        case Model::AN: return "AN";
        case Model::STN: return "STN";
        case Model::LON: return "LON";
    }
    return "unknown";
}

std::optional<Model> model_from_string(std::string_view name) {
    for (Model m : {Model::AN, Model::STN, Model::LON}) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

NodeKey quantize(std::span<const double> x, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("quantize: epsilon must be positive");
    NodeKey key;
    key.q.reserve(x.size());
    for (double xi : x) {
        if (!std::isfinite(xi)) throw ValidationError("quantize: non-finite coordinate");
        const double cell = std::floor(xi / epsilon);
        if (std::abs(cell) >= 9.0e18) {
            throw ValidationError("quantize: coordinate/epsilon ratio out of range");
        }
        key.q.push_back(static_cast<std::int64_t>(cell));
    }
    return key;
}

double suggest_partition_factor(double x_min, double x_max, int dimension) {
    if (!(x_max > x_min)) throw ValidationError("partition factor: x_max must exceed x_min");
    if (dimension < 1) throw ValidationError("partition factor: dimension must be positive");
    const double v = (x_max - x_min) * static_cast<double>(dimension);
    // Largest integer n with v >= 10^n, robust at exact powers of ten.
    int n = static_cast<int>(std::floor(std::log10(v)));
    while (std::pow(10.0, n + 1) <= v) ++n;
    while (std::pow(10.0, n) > v) --n;
    return std::pow(10.0, n - 2);
}

std::vector<Attractor> extract_attractors(const TrajectoryLog& log, std::uint64_t beta) {
    std::vector<Attractor> out;
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const std::uint64_t next =
            (i + 1 < log.events.size()) ? log.events[i + 1].evals : log.final_evals;
        const std::uint64_t stall = next - log.events[i].evals;
        if (stall >= beta) out.push_back(Attractor{log.events[i], stall});
    }
    return out;
}

std::vector<ImprovementEvent> stn_snapshots(const TrajectoryLog& log, std::uint64_t k) {
    if (k < 1) throw ValidationError("STN: cadence k must be >= 1");
    const std::uint64_t cadence = k * log.pop_size;
    std::vector<ImprovementEvent> out;
    std::size_t i = 0;  // index of the last event with evals <= t
    for (std::uint64_t t = cadence; t <= log.final_evals; t += cadence) {
        while (i + 1 < log.events.size() && log.events[i + 1].evals <= t) ++i;
        if (log.events.empty() || log.events[i].evals > t) continue;
        out.push_back(log.events[i]);
    }
    return out;
}

namespace {

struct SeqElem {
    const ImprovementEvent* event;
    std::uint64_t stall;
};

std::vector<SeqElem> node_sequence(const TrajectoryLog& log, const NetworkConfig& config,
                                   std::vector<ImprovementEvent>& snapshot_storage) {
    std::vector<SeqElem> seq;
    switch (config.model) {
        case Model::AN: {
            for (std::size_t i = 0; i < log.events.size(); ++i) {
                const std::uint64_t next =
                    (i + 1 < log.events.size()) ? log.events[i + 1].evals : log.final_evals;
                const std::uint64_t stall = next - log.events[i].evals;
                if (stall >= config.beta) seq.push_back(SeqElem{&log.events[i], stall});
            }
            break;
        }
        case Model::LON: {
            for (std::size_t i = 0; i < log.events.size(); ++i) {
                const std::uint64_t next =
                    (i + 1 < log.events.size()) ? log.events[i + 1].evals : log.final_evals;
                seq.push_back(SeqElem{&log.events[i], next - log.events[i].evals});
            }
            break;
        }
        case Model::STN: {
            snapshot_storage = stn_snapshots(log, config.stn_cadence_k);
            seq.reserve(snapshot_storage.size());
            for (const ImprovementEvent& e : snapshot_storage) {
                seq.push_back(SeqElem{&e, 0});
            }
            break;
        }
    }
    return seq;
}

}  // namespace

Network build_network(std::span<const TrajectoryLog> logs, const NetworkConfig& config,
                      const Problem& problem) {
    if (config.beta < 1) throw ValidationError("network config: beta must be >= 1");
    if (!(config.epsilon > 0.0)) throw ValidationError("network config: epsilon must be positive");

    for (const TrajectoryLog& log : logs) {
        if (log.function_id != problem.function_id() || log.dimension != problem.dimension()) {
            throw ValidationError("build_network: logs do not all belong to the given problem");
        }
        if (config.model == Model::LON && log.algorithm != Algorithm::basin_hopping) {
            throw ValidationError("build_network: LON construction requires MBH logs");
        }
        if (config.model == Model::STN && log.algorithm == Algorithm::basin_hopping) {
            throw ValidationError("build_network: STN construction is not defined for MBH logs");
        }
    }

    Network net;
    net.config = config;
    net.function_id = problem.function_id();
    net.dimension = problem.dimension();
    net.run_count = static_cast<std::uint32_t>(logs.size());
    net.report.runs_total = static_cast<std::uint32_t>(logs.size());

    // Merge order: ascending seed, ties by input position.
    std::vector<std::size_t> order(logs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return logs[a].seed < logs[b].seed; });

    for (std::size_t idx : order) {
        std::vector<ImprovementEvent> snapshot_storage;
        const std::vector<SeqElem> seq = node_sequence(logs[idx], config, snapshot_storage);
        net.report.per_run_elements.push_back(seq.size());
        if (seq.empty()) {
            net.report.per_run_collapsed.push_back(0);
            ++net.report.runs_skipped;
            continue;
        }
        ++net.report.runs_used;

        std::set<NodeKey> seen_this_run;
        const NodeKey* prev_key = nullptr;
        const SeqElem* prev_elem = nullptr;
        NodeKey key;
        NodeKey first_key;
        std::uint64_t collapsed = 0;
        for (const SeqElem& elem : seq) {
            key = quantize(elem.event->genotype, config.epsilon);
            auto [it, inserted] = net.nodes.try_emplace(key);
            NodeData& node = it->second;
            if (inserted) {
                node.representative = elem.event->genotype;
                node.best_fitness = elem.event->fitness;
            } else {
                node.best_fitness = std::min(node.best_fitness, elem.event->fitness);
            }
            node.stall_total += elem.stall;
            if (seen_this_run.insert(key).second) ++node.run_count;

            if (prev_key == nullptr) {
                first_key = key;
                ++collapsed;
            } else if (key != *prev_key) {
                EdgeData& edge = net.edges[{*prev_key, key}];
                ++edge.count;
                edge.differentials.push_back(elem.event->evals - prev_elem->event->evals);
                ++net.report.transitions;
                ++collapsed;
            }
            prev_key = &it->first;
            prev_elem = &elem;
        }
        net.report.per_run_collapsed.push_back(collapsed);
        net.run_endpoints.emplace_back(first_key, *prev_key);
    }
    return net;
}

}  // namespace stallnet
