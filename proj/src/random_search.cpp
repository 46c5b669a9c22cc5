#include <cmath>

#include "optim_common.hpp"
#include "stallnet/error.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"

namespace stallnet {

int default_population(int dimension) {
    return 4 + static_cast<int>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

std::uint64_t default_budget(int dimension) { return dimension <= 2 ? 10000 : 50000; }

TrajectoryLog run_random_search(const Problem& problem, std::uint64_t budget,
                                std::uint64_t seed) {
    if (budget < 1) throw ValidationError("random search: budget must be >= 1");

    TrajectoryLog log;
    log.algorithm = Algorithm::random_search;
    log.function_id = problem.function_id();
    log.dimension = problem.dimension();
    log.seed = seed;
    log.budget = budget;
    log.pop_size = 1;

    detail::BudgetedEval eval(problem, budget, log, /*record=*/true);
    Rng rng(seed);
    std::vector<double> x(static_cast<std::size_t>(problem.dimension()));
    while (!eval.exhausted()) {
        for (double& xi : x) xi = rng.uniform(problem.lower_bound(), problem.upper_bound());
        eval(x);
    }
    log.final_evals = eval.used();
    return log;
}

TrajectoryLog run_algorithm(Algorithm algo, const Problem& problem, std::uint64_t budget,
                            std::uint64_t seed) {
    switch (algo) {
        case Algorithm::random_search: return run_random_search(problem, budget, seed);
        case Algorithm::differential_evolution: return run_de(problem, budget, seed);
        case Algorithm::cmaes: return run_cmaes(problem, budget, seed);
        case Algorithm::basin_hopping: return run_basin_hopping(problem, budget, seed);
    }
    throw ValidationError("unknown algorithm");
}

}  // namespace stallnet
