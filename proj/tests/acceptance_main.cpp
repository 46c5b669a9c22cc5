// Acceptance suite: runs every criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "stallnet/graph_export.hpp"
#include "stallnet/layout.hpp"
#include "stallnet/log_io.hpp"
#include "stallnet/metrics.hpp"
#include "stallnet/netbuild.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"
#include "stallnet/runner.hpp"

using namespace stallnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::set<NodeKey> node_keys(const Network& net) {
    std::set<NodeKey> keys;
    for (const auto& [key, data] : net.nodes) keys.insert(key);
    return keys;
}

std::vector<TrajectoryLog> make_runs(Algorithm algo, const Problem& problem, int count,
                                     std::uint64_t budget, std::uint64_t master) {
    std::vector<TrajectoryLog> logs;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = derive_seed(
            master, {static_cast<std::uint64_t>(algo),
                     static_cast<std::uint64_t>(problem.function_id()),
                     static_cast<std::uint64_t>(problem.dimension()),
                     static_cast<std::uint64_t>(i)});
        logs.push_back(run_algorithm(algo, problem, budget, seed));
    }
    return logs;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria 1 and 5: beta monotonicity and the exact subset property --------

const std::vector<std::uint64_t> kBetaGrid{10, 20, 40, 80, 160, 320, 640};

struct BetaSweepCell {
    std::string label;
    std::vector<std::size_t> counts;                  // per beta
    std::map<std::uint64_t, std::set<NodeKey>> keys;  // per beta
};

std::vector<BetaSweepCell> beta_sweep_cells;

void criterion_1() {
    const auto start = Clock::now();
    bool mono = true, strict = true;
    std::string detail;
    for (Algorithm algo : {Algorithm::cmaes, Algorithm::differential_evolution}) {
        for (FunctionId fn : {FunctionId::sphere, FunctionId::rastrigin}) {
            const Problem problem = catalog_problem(fn, 2);
            const auto logs = make_runs(algo, problem, 10, 10000, 1);
            BetaSweepCell cell;
            cell.label = std::string(to_string(algo)) + "/" + std::string(to_string(fn));
            bool cell_strict = false;
            for (std::uint64_t beta : kBetaGrid) {
                const Network net =
                    build_network(logs, NetworkConfig{Model::AN, beta, 1e-5, 1}, problem);
                if (!cell.counts.empty()) {
                    if (net.nodes.size() > cell.counts.back()) mono = false;
                    if (net.nodes.size() < cell.counts.back()) cell_strict = true;
                }
                cell.counts.push_back(net.nodes.size());
                if (beta == kBetaGrid.front() || beta == kBetaGrid.back()) {
                    cell.keys[beta] = node_keys(net);
                }
            }
            if (!cell_strict) strict = false;
            detail += cell.label + "=";
            for (std::size_t i = 0; i < cell.counts.size(); ++i) {
                detail += (i ? "/" : "") + std::to_string(cell.counts[i]);
            }
            detail += " ";
            beta_sweep_cells.push_back(std::move(cell));
        }
    }
    const double elapsed = seconds_since(start);
    detail += "t=" + std::to_string(elapsed) + "s";
    report(1, "AN node counts non-increasing in beta, strictly somewhere, under 60 s",
           mono && strict && elapsed < 60.0, detail);
}

void criterion_5() {
    bool pass = !beta_sweep_cells.empty();
    for (const BetaSweepCell& cell : beta_sweep_cells) {
        const auto& wide = cell.keys.at(640);
        const auto& narrow = cell.keys.at(10);
        if (!std::includes(narrow.begin(), narrow.end(), wide.begin(), wide.end())) {
            pass = false;
        }
    }
    report(5, "AN(beta=640) node keys are a subset of AN(beta=10) for every pair", pass);
}

// ---- criterion 2: random-search calibration -----------------------------------

void criterion_2() {
    const std::vector<FunctionId> functions{FunctionId::sphere, FunctionId::rosenbrock,
                                            FunctionId::rastrigin, FunctionId::schaffer_f7,
                                            FunctionId::gallagher};
    std::map<Algorithm, std::map<std::uint64_t, std::vector<double>>> mds;  // algo -> beta -> per-fn
    std::map<std::uint64_t, std::vector<double>> rs_node_counts;            // beta -> per-fn
    bool all_defined = true;

    for (FunctionId fn : functions) {
        const Problem problem = catalog_problem(fn, 2);
        for (Algorithm algo :
             {Algorithm::random_search, Algorithm::differential_evolution, Algorithm::cmaes}) {
            const auto logs = make_runs(algo, problem, 30, 10000, 2);
            for (std::uint64_t beta : {40, 80}) {
                const Network net =
                    build_network(logs, NetworkConfig{Model::AN, beta, 1e-5, 1}, problem);
                const auto md = median_edge_differential(net);
                if (!md) {
                    all_defined = false;
                    continue;
                }
                mds[algo][beta].push_back(*md);
                if (algo == Algorithm::random_search) {
                    rs_node_counts[beta].push_back(static_cast<double>(net.nodes.size()));
                }
            }
        }
    }

    bool ordering = all_defined;
    std::string detail;
    for (std::uint64_t beta : {40, 80}) {
        const double rs = aggregate(mds[Algorithm::random_search][beta]).median;
        const double de = aggregate(mds[Algorithm::differential_evolution][beta]).median;
        const double cma = aggregate(mds[Algorithm::cmaes][beta]).median;
        if (!(rs > de && rs > cma)) ordering = false;
        detail += "b" + std::to_string(beta) + ": RS=" + std::to_string(rs) +
                  " DE=" + std::to_string(de) + " CMA=" + std::to_string(cma) + " ";
    }

    bool insensitive = true;
    for (std::uint64_t beta : {40, 80}) {
        const auto& counts = rs_node_counts[beta];
        double mean = 0.0;
        for (double c : counts) mean += c;
        mean /= static_cast<double>(counts.size());
        double var = 0.0;
        for (double c : counts) var += (c - mean) * (c - mean);
        var /= static_cast<double>(counts.size() - 1);
        const double cov = std::sqrt(var) / mean;
        if (!(cov < 0.5)) insensitive = false;
        detail += "cov" + std::to_string(beta) + "=" + std::to_string(cov) + " ";
    }

    report(2, "RS md exceeds DE and CMA md at beta 40 and 80; RS node counts stable",
           ordering && insensitive, detail);
}

// ---- criterion 3: chain-edge identity ------------------------------------------

void criterion_3() {
    std::vector<TrajectoryLog> logs;
    for (int run = 0; run < 30; ++run) {
        TrajectoryLog log;
        log.algorithm = Algorithm::cmaes;
        log.function_id = FunctionId::sphere;
        log.dimension = 2;
        log.seed = static_cast<std::uint64_t>(run);
        log.pop_size = 6;
        const int len = 2 + run % 6;
        for (int i = 0; i < len; ++i) {
            log.events.push_back(ImprovementEvent{
                static_cast<std::uint64_t>(100 * (i + 1)), 500.0 - static_cast<double>(i),
                {-5.0 + 0.31 * run, -5.0 + 0.31 * i}});
        }
        log.final_evals = static_cast<std::uint64_t>(100 * len + 400);
        log.budget = log.final_evals;
        logs.push_back(std::move(log));
    }
    const Problem problem = Problem::make(FunctionId::sphere, 2);
    const Network net =
        build_network(logs, NetworkConfig{Model::AN, 40, 1e-2, 1}, problem);
    const bool pass = net.nodes.size() == net.edges.size() + 30;
    report(3, "30 distinct-key chains give nodes = edges + 30 exactly", pass,
           std::to_string(net.nodes.size()) + " nodes, " + std::to_string(net.edges.size()) +
               " edges");
}

// ---- criterion 4: builder oracle equivalence -----------------------------------

bool same_cell(const std::vector<double>& a, const std::vector<double>& b, double eps) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (std::floor(a[j] / eps) != std::floor(b[j] / eps)) return false;
    }
    return true;
}

struct OracleNode {
    std::vector<double> representative;
    double best_fitness = std::numeric_limits<double>::infinity();
    int run_count = 0;
    std::uint64_t stall_total = 0;
};

struct OracleNet {
    std::vector<OracleNode> nodes;
    std::vector<std::tuple<int, int, std::uint64_t>> edges;
};

OracleNet oracle_build_an(std::vector<TrajectoryLog> logs, std::uint64_t beta, double eps) {
    std::stable_sort(logs.begin(), logs.end(), [](const TrajectoryLog& a, const TrajectoryLog& b) {
        return a.seed < b.seed;
    });
    OracleNet net;
    auto node_id = [&](const std::vector<double>& genotype) {
        for (std::size_t i = 0; i < net.nodes.size(); ++i) {
            if (same_cell(net.nodes[i].representative, genotype, eps)) {
                return static_cast<int>(i);
            }
        }
        net.nodes.push_back(OracleNode{genotype, std::numeric_limits<double>::infinity(), 0, 0});
        return static_cast<int>(net.nodes.size() - 1);
    };
    for (const TrajectoryLog& log : logs) {
        std::vector<std::pair<const ImprovementEvent*, std::uint64_t>> attractors;
        for (std::size_t i = 0; i < log.events.size(); ++i) {
            const std::uint64_t next =
                i + 1 < log.events.size() ? log.events[i + 1].evals : log.final_evals;
            const std::uint64_t stall = next - log.events[i].evals;
            if (stall >= beta) attractors.emplace_back(&log.events[i], stall);
        }
        std::set<int> seen;
        int prev_id = -1;
        const ImprovementEvent* prev_event = nullptr;
        for (const auto& [event, stall] : attractors) {
            const int id = node_id(event->genotype);
            OracleNode& node = net.nodes[static_cast<std::size_t>(id)];
            node.best_fitness = std::min(node.best_fitness, event->fitness);
            node.stall_total += stall;
            if (seen.insert(id).second) ++node.run_count;
            if (prev_event != nullptr && id != prev_id) {
                net.edges.emplace_back(prev_id, id, event->evals - prev_event->evals);
            }
            prev_id = id;
            prev_event = event;
        }
    }
    return net;
}

void criterion_4() {
    std::mt19937_64 gen(112233);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    int logs_checked = 0;
    bool pass = true;
    std::string detail;

    while (logs_checked < 100 && pass) {
        const int dim = 2 + static_cast<int>(gen() % 2);
        const Problem problem = Problem::make(FunctionId::sphere, dim);
        const int group = 1 + static_cast<int>(gen() % 5);
        std::vector<TrajectoryLog> logs;
        for (int i = 0; i < group; ++i) {
            TrajectoryLog log;
            log.algorithm = Algorithm::cmaes;
            log.function_id = FunctionId::sphere;
            log.dimension = dim;
            log.seed = gen() % 997;
            log.pop_size = 6;
            const int n = static_cast<int>(gen() % 26);
            std::uint64_t evals = 0;
            double fitness = 1000.0;
            std::vector<std::vector<double>> previous;
            for (int e = 0; e < n; ++e) {
                evals += 1 + gen() % 120;
                fitness -= std::uniform_real_distribution<double>(0.001, 5.0)(gen);
                std::vector<double> g;
                if (!previous.empty() && gen() % 4 == 0) {
                    g = previous[gen() % previous.size()];
                } else {
                    for (int k = 0; k < dim; ++k) g.push_back(coord(gen));
                }
                previous.push_back(g);
                log.events.push_back(ImprovementEvent{evals, fitness, std::move(g)});
            }
            log.final_evals = evals + gen() % 150;
            log.budget = log.final_evals + 10;
            logs.push_back(std::move(log));
        }
        logs_checked += group;
        const std::uint64_t beta = 1 + gen() % 150;
        const double eps = std::pow(10.0, -static_cast<double>(gen() % 3));

        const Network net =
            build_network(logs, NetworkConfig{Model::AN, beta, eps, 1}, problem);
        const OracleNet oracle = oracle_build_an(logs, beta, eps);

        if (net.nodes.size() != oracle.nodes.size()) {
            pass = false;
            detail = "node count mismatch";
            break;
        }
        std::map<NodeKey, int> to_oracle;
        for (const auto& [key, data] : net.nodes) {
            int found = -1;
            for (std::size_t i = 0; i < oracle.nodes.size(); ++i) {
                if (oracle.nodes[i].representative == data.representative) {
                    found = static_cast<int>(i);
                    break;
                }
            }
            const OracleNode* expected =
                found >= 0 ? &oracle.nodes[static_cast<std::size_t>(found)] : nullptr;
            if (expected == nullptr || data.best_fitness != expected->best_fitness ||
                static_cast<int>(data.run_count) != expected->run_count ||
                data.stall_total != expected->stall_total) {
                pass = false;
                detail = "node data mismatch";
                break;
            }
            to_oracle[key] = found;
        }
        if (!pass) break;

        std::vector<std::tuple<int, int, std::uint64_t>> got;
        for (const auto& [endpoints, edge] : net.edges) {
            if (edge.count != edge.differentials.size()) {
                pass = false;
                detail = "edge count / differential mismatch";
                break;
            }
            for (std::uint64_t d : edge.differentials) {
                got.emplace_back(to_oracle.at(endpoints.first), to_oracle.at(endpoints.second),
                                 d);
            }
        }
        if (!pass) break;
        auto expected_edges = oracle.edges;
        std::sort(got.begin(), got.end());
        std::sort(expected_edges.begin(), expected_edges.end());
        if (got != expected_edges) {
            pass = false;
            detail = "edge multiset mismatch";
        }
    }
    report(4, "builder equals the brute-force oracle on 100 randomized logs", pass,
           pass ? std::to_string(logs_checked) + " logs" : detail);
}

// ---- criterion 6: unimodal LON --------------------------------------------------

void criterion_6() {
    const Problem problem = catalog_problem(FunctionId::sphere, 2);
    const auto logs = make_runs(Algorithm::basin_hopping, problem, 30, 10000, 3);
    const Network net = build_network(logs, NetworkConfig{Model::LON, 1, 1e-2, 1}, problem);
    bool near_origin = true;
    for (const auto& [key, data] : net.nodes) {
        double n2 = 0.0;
        for (double c : data.representative) n2 += c * c;
        if (std::sqrt(n2) >= 1e-4) near_origin = false;
    }
    const bool pass = net.nodes.size() == 1 && net.edges.empty() && near_origin;
    report(6, "LON of 30 MBH runs on the 2-D sphere: exactly 1 node, 0 edges, at the origin",
           pass,
           std::to_string(net.nodes.size()) + " nodes, " + std::to_string(net.edges.size()) +
               " edges, near_origin=" + (near_origin ? "yes" : "no"));
}

// ---- criterion 7: global-optimum presence ---------------------------------------

void criterion_7() {
    const Problem sphere = catalog_problem(FunctionId::sphere, 2);
    const auto cma_logs = make_runs(Algorithm::cmaes, sphere, 30, 10000, 4);
    const Network cma_an =
        build_network(cma_logs, NetworkConfig{Model::AN, 40, 1e-5, 1}, sphere);
    const bool cma_has = contains_global_optimum(cma_an, sphere, 1e-8);

    const Problem rastrigin = catalog_problem(FunctionId::rastrigin, 2);
    const auto rs_logs = make_runs(Algorithm::random_search, rastrigin, 30, 10000, 4);
    const Network rs_an =
        build_network(rs_logs, NetworkConfig{Model::AN, 40, 1e-5, 1}, rastrigin);
    const bool rs_has = contains_global_optimum(rs_an, rastrigin, 1e-8);

    report(7, "CMA sphere AN contains the optimum at 1e-8, RS rastrigin AN does not",
           cma_has && !rs_has,
           std::string("cma=") + (cma_has ? "yes" : "no") + " rs=" + (rs_has ? "yes" : "no"));
}

// ---- criterion 8: MDS fidelity ---------------------------------------------------

Network reps_network(const std::vector<std::vector<double>>& reps, double eps) {
    Network net;
    net.config = NetworkConfig{Model::AN, 40, eps, 1};
    net.dimension = static_cast<int>(reps.front().size());
    double fitness = 1.0;
    for (const auto& rep : reps) {
        NodeData data;
        data.representative = rep;
        data.best_fitness = fitness;
        fitness += 1.0;
        net.nodes[quantize(rep, eps)] = data;
    }
    return net;
}

void criterion_8() {
    std::mt19937_64 gen(31415);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Planar subspace of 10-D space: embedded distances within 1e-6 relative error.
    std::vector<double> u(10), v(10), origin(10);
    for (double& x : u) x = normal(gen);
    double un = 0.0;
    for (double x : u) un += x * x;
    for (double& x : u) x /= std::sqrt(un);
    for (double& x : v) x = normal(gen);
    double uv = 0.0;
    for (std::size_t i = 0; i < 10; ++i) uv += u[i] * v[i];
    for (std::size_t i = 0; i < 10; ++i) v[i] -= uv * u[i];
    double vn = 0.0;
    for (double x : v) vn += x * x;
    for (double& x : v) x /= std::sqrt(vn);
    for (double& x : origin) x = 0.5 * normal(gen);

    std::uniform_real_distribution<double> c(-2.0, 2.0);
    std::vector<std::vector<double>> reps;
    for (int i = 0; i < 15; ++i) {
        std::vector<double> rep(10);
        const double s = c(gen), t = c(gen);
        for (std::size_t k = 0; k < 10; ++k) rep[k] = origin[k] + s * u[k] + t * v[k];
        reps.push_back(std::move(rep));
    }
    const LayoutedNetwork planar = layout(reps_network(reps, 1e-6));
    bool planar_ok = true;
    for (std::size_t i = 0; i < reps.size() && planar_ok; ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            double orig = 0.0;
            for (std::size_t k = 0; k < 10; ++k) {
                orig += (reps[i][k] - reps[j][k]) * (reps[i][k] - reps[j][k]);
            }
            orig = std::sqrt(orig);
            const auto& pi = planar.positions.at(quantize(reps[i], 1e-6));
            const auto& pj = planar.positions.at(quantize(reps[j], 1e-6));
            const double emb = std::hypot(pi[0] - pj[0], pi[1] - pj[1]);
            if (std::abs(emb - orig) > 1e-6 * std::max(1.0, orig)) {
                planar_ok = false;
                break;
            }
        }
    }

    // Collinear three points with distances 1, 1, 2: first coordinates are
    // {-1, 0, 1} up to sign and translation, second coordinates vanish.
    std::vector<std::vector<double>> line(3, origin);
    for (std::size_t k = 0; k < 10; ++k) {
        line[1][k] += u[k];
        line[2][k] += 2.0 * u[k];
    }
    const LayoutedNetwork collinear = layout(reps_network(line, 1e-6));
    std::vector<double> first;
    bool second_zero = true;
    for (const auto& rep : line) {
        const auto& pos = collinear.positions.at(quantize(rep, 1e-6));
        first.push_back(pos[0]);
        if (std::abs(pos[1]) >= 1e-9) second_zero = false;
    }
    std::sort(first.begin(), first.end());
    const bool collinear_ok = second_zero && std::abs(first[0] + 1.0) < 1e-9 &&
                              std::abs(first[1]) < 1e-9 && std::abs(first[2] - 1.0) < 1e-9;

    report(8, "classical MDS reproduces planar distances and the collinear embedding",
           planar_ok && collinear_ok);
}

// ---- criterion 9: partition factor ----------------------------------------------

void criterion_9() {
    const bool pass = suggest_partition_factor(-5.0, 5.0, 2) == 1e-1 &&
                      suggest_partition_factor(-5.0, 5.0, 10) == 1e0;
    report(9, "partition factor is 1e-1 at (-5,5,D=2) and 1e0 at (-5,5,D=10) exactly", pass);
}

// ---- criterion 10: pipeline reproducibility --------------------------------------

void criterion_10() {
    const auto start = Clock::now();
    const fs::path base = fs::temp_directory_path() / "stallnet_acceptance";
    fs::remove_all(base);

    const std::vector<std::uint64_t> betas{10, 20, 40, 80, 160, 320, 640};
    const std::vector<double> epsilons{1e-2, 1e-3, 1e-4, 1e-5};

    auto run_pipeline = [&](const fs::path& dir) {
        RunManifest manifest;
        manifest.functions = {FunctionId::sphere, FunctionId::rosenbrock, FunctionId::rastrigin,
                              FunctionId::schaffer_f7, FunctionId::gallagher};
        manifest.dimensions = {2, 10};
        manifest.algorithms = {Algorithm::random_search, Algorithm::differential_evolution,
                               Algorithm::cmaes};
        manifest.runs_per_cell = 10;
        manifest.master_seed = 42;
        manifest.budget = 0;  // per-dimension defaults
        manifest.output_dir = dir;
        cmd_run(manifest);
        for (FunctionId fn : manifest.functions) {
            for (int dim : manifest.dimensions) {
                for (Algorithm algo : manifest.algorithms) {
                    const std::string stem = std::string(to_string(fn)) + "_d" +
                                             std::to_string(dim) + "_" +
                                             std::string(to_string(algo));
                    cmd_build({(dir / "logs" / (stem + "_r*.jsonl")).string()},
                              NetworkConfig{Model::AN, 40, 1e-5, 1}, GraphFormat::graphml,
                              dir / "networks" / (stem + ".graphml"));
                }
            }
        }
        cmd_sweep(manifest, betas, epsilons);
    };

    run_pipeline(base / "a");
    const double first_run_seconds = seconds_since(start);
    run_pipeline(base / "b");

    bool identical = true;
    std::size_t files = 0;
    std::string mismatch;
    for (const auto& entry : fs::recursive_directory_iterator(base / "a")) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const fs::path rel = fs::relative(entry.path(), base / "a");
        const fs::path other = base / "b" / rel;
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
            identical = false;
            mismatch = rel.string();
            break;
        }
    }
    const bool pass = identical && files > 60 && first_run_seconds < 600.0;
    report(10, "two pipeline executions are byte-identical and fit in 10 minutes", pass,
           identical ? (std::to_string(files) + " files, first run " +
                        std::to_string(first_run_seconds) + "s")
                     : ("mismatch at " + mismatch));
    fs::remove_all(base);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
