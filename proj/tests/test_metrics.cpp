#include <doctest.h>

#include <algorithm>
#include <random>

#include "stallnet/error.hpp"
#include "stallnet/metrics.hpp"
#include "stallnet/optim.hpp"

using namespace stallnet;

namespace {

Network synthetic_network(const std::vector<std::vector<double>>& reps, double eps,
                          double best_fitness = 1.0) {
    Network net;
    net.config = NetworkConfig{Model::AN, 40, eps, 1};
    net.dimension = reps.empty() ? 2 : static_cast<int>(reps.front().size());
    for (const auto& rep : reps) {
        NodeData data;
        data.representative = rep;
        data.best_fitness = best_fitness;
        data.run_count = 1;
        net.nodes[quantize(rep, eps)] = data;
    }
    return net;
}

TrajectoryLog three_attractor_log() {
    TrajectoryLog log;
    log.algorithm = Algorithm::cmaes;
    log.function_id = FunctionId::sphere;
    log.dimension = 2;
    log.seed = 1;
    log.budget = 210;
    log.final_evals = 200;
    log.events = {{1, 30.0, {1.0, 1.0}}, {50, 20.0, {2.0, 2.0}}, {140, 10.0, {3.0, 3.0}}};
    return log;
}

}  // namespace

TEST_CASE("aggregate follows the type-7 quantile rule") {
    CHECK(aggregate(std::vector<double>{1, 2, 3, 4, 5}).median == 3.0);
    CHECK(aggregate(std::vector<double>{1, 2, 3, 4, 5}).iqr == 2.0);
    CHECK(aggregate(std::vector<double>{7.5}).median == 7.5);
    CHECK(aggregate(std::vector<double>{7.5}).iqr == 0.0);
    const SummaryStats s = aggregate(std::vector<double>{1, 2, 3, 4});
    CHECK(s.median == 2.5);
    CHECK(s.iqr == doctest::Approx(1.5).epsilon(1e-15));  // Q1 = 1.75, Q3 = 3.25
    CHECK_THROWS_AS(aggregate(std::vector<double>{}), ValidationError);
}

TEST_CASE("aggregate is permutation invariant and translation equivariant") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> values(1 + gen() % 30);
        for (double& v : values) v = dist(gen);
        const SummaryStats base = aggregate(values);
        std::shuffle(values.begin(), values.end(), gen);
        const SummaryStats shuffled = aggregate(values);
        CHECK(base.median == shuffled.median);
        CHECK(base.iqr == shuffled.iqr);
        const double c = dist(gen);
        for (double& v : values) v += c;
        const SummaryStats moved = aggregate(values);
        CHECK(moved.median == doctest::Approx(base.median + c).epsilon(1e-12));
        CHECK(moved.iqr == doctest::Approx(base.iqr).epsilon(1e-9));
    }
}

TEST_CASE("network size counts the maps") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    const Network empty =
        build_network(std::vector<TrajectoryLog>{}, NetworkConfig{Model::AN, 40, 1e-5, 1}, p);
    CHECK(network_size(empty) == std::pair<std::size_t, std::size_t>{0, 0});

    const Network net = build_network(std::vector<TrajectoryLog>{three_attractor_log()},
                                      NetworkConfig{Model::AN, 40, 1e-5, 1}, p);
    CHECK(network_size(net) == std::pair<std::size_t, std::size_t>{3, 2});
}

TEST_CASE("median edge differential pools every transition") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    const Network net = build_network(std::vector<TrajectoryLog>{three_attractor_log()},
                                      NetworkConfig{Model::AN, 40, 1e-5, 1}, p);
    CHECK(median_edge_differential(net) == 69.5);  // median of {49, 90}

    Network single = net;
    single.edges.clear();
    EdgeData e;
    e.count = 1;
    e.differentials = {95};
    single.edges[{net.nodes.begin()->first, std::next(net.nodes.begin())->first}] = e;
    CHECK(median_edge_differential(single) == 95.0);

    EdgeData equal_edges;
    equal_edges.count = 4;
    equal_edges.differentials = {42, 42, 42, 42};
    single.edges.begin()->second = equal_edges;
    CHECK(median_edge_differential(single) == 42.0);

    const Network empty =
        build_network(std::vector<TrajectoryLog>{}, NetworkConfig{Model::AN, 40, 1e-5, 1}, p);
    CHECK(!median_edge_differential(empty).has_value());
}

TEST_CASE("node overlap counts mutual keys against the vertical total") {
    const Network v = synthetic_network({{0.1, 0.1}, {1.1, 1.1}, {2.1, 2.1}}, 1e-1);
    const Network h = synthetic_network({{1.1, 1.1}, {2.1, 2.1}, {3.1, 3.1}}, 1e-1);
    const OverlapResult vh = node_overlap(v, h);
    CHECK(vh.matched == 2);
    CHECK(vh.total_vertical == 3);
    CHECK(vh.proportion == doctest::Approx(2.0 / 3.0));
    const OverlapResult hv = node_overlap(h, v);
    CHECK(hv.matched == vh.matched);  // matched is symmetric, denominators differ
    CHECK(node_overlap(v, v).proportion == 1.0);

    const Network other_eps = synthetic_network({{0.1, 0.1}}, 1e-2);
    CHECK_THROWS_AS(node_overlap(v, other_eps), ValidationError);
    const OverlapResult cross = node_overlap_at(v, other_eps, 1e-1);
    CHECK(cross.requantized);
    CHECK(cross.epsilon_used == 1e-1);
    CHECK(cross.matched == 1);
}

TEST_CASE("overlap of a wide-beta network in a narrow-beta one is total") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    std::vector<TrajectoryLog> logs;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        logs.push_back(run_cmaes(p, 3000, seed));
    }
    const Network narrow = build_network(logs, NetworkConfig{Model::AN, 10, 1e-5, 1}, p);
    const Network wide = build_network(logs, NetworkConfig{Model::AN, 640, 1e-5, 1}, p);
    if (!wide.nodes.empty()) {
        CHECK(node_overlap(wide, narrow).proportion == 1.0);
    }
}

TEST_CASE("global optimum presence is a fitness test") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    Network net = synthetic_network({{3.0, 3.0}}, 1e-1, p.f_opt() + 1e-12);
    CHECK(contains_global_optimum(net, p, 1e-8));
    net.nodes.begin()->second.best_fitness = p.f_opt() + 1e-3;
    CHECK(!contains_global_optimum(net, p, 1e-8));
    const Network empty =
        build_network(std::vector<TrajectoryLog>{}, NetworkConfig{Model::AN, 40, 1e-5, 1}, p);
    CHECK(!contains_global_optimum(empty, p, 1e-8));
}

TEST_CASE("sweep: a single cell equals the direct calls") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    std::vector<TrajectoryLog> logs;
    for (std::uint64_t seed = 0; seed < 3; ++seed) logs.push_back(run_cmaes(p, 2000, seed));
    const NetworkConfig config{Model::AN, 40, 1e-5, 1};
    const SweepResult result = sweep_matrix({{p, logs}}, std::vector<NetworkConfig>{config});
    REQUIRE(result.rows.size() == 1);
    const Network direct = build_network(logs, config, p);
    CHECK(result.rows[0].nodes == direct.nodes.size());
    CHECK(result.rows[0].edges == direct.edges.size());
    CHECK(result.rows[0].md == median_edge_differential(direct));
    CHECK(result.rows[0].gopt_present == contains_global_optimum(direct, p));
    CHECK(result.overlap_median[0][0] == 1.0);
    CHECK(result.errors.empty());
}

TEST_CASE("sweep: node counts fall along the beta grid and the diagonal is one") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    std::vector<TrajectoryLog> logs;
    for (std::uint64_t seed = 0; seed < 5; ++seed) logs.push_back(run_cmaes(p, 4000, seed));
    std::vector<NetworkConfig> configs;
    for (std::uint64_t beta : {10, 40, 160, 640}) {
        configs.push_back(NetworkConfig{Model::AN, beta, 1e-5, 1});
    }
    const SweepResult result = sweep_matrix({{p, logs}}, configs);
    REQUIRE(result.rows.size() == 4);
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        CHECK(result.rows[i].nodes <= result.rows[i - 1].nodes);
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        CHECK(result.overlap_median[i][i] == 1.0);
    }
}

TEST_CASE("sweep records per-cell failures and continues") {
    const Problem p = Problem::make(FunctionId::sphere, 2);
    std::vector<TrajectoryLog> logs;
    for (std::uint64_t seed = 0; seed < 2; ++seed) logs.push_back(run_cmaes(p, 1000, seed));
    // LON over CMA logs is invalid and must fail in its cell only.
    const std::vector<NetworkConfig> configs{NetworkConfig{Model::AN, 40, 1e-5, 1},
                                             NetworkConfig{Model::LON, 40, 1e-5, 1}};
    const SweepResult result = sweep_matrix({{p, logs}}, configs);
    CHECK(result.rows.size() == 1);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].config == config_label(configs[1]));
}
