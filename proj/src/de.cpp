#include <vector>

#include "optim_common.hpp"
#include "stallnet/error.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"

namespace stallnet {

// DE rand/1/bin, synchronous generations, saturation bound handling, selection by <=
// (ties replace the parent). RNG call order per parent: r1, r2, r3 rejection draws,
// the forced coordinate index, then one uniform per coordinate.
TrajectoryLog run_de(const Problem& problem, std::uint64_t budget, std::uint64_t seed,
                     const DEParams& params) {
    const int dim = problem.dimension();
    const int np = params.pop_size > 0 ? params.pop_size : default_population(dim);
    if (np < 4) throw ValidationError("DE: pop_size must be >= 4 (rand/1 needs three others)");
    if (params.crossover_rate < 0.0 || params.crossover_rate > 1.0) {
        throw ValidationError("DE: crossover rate must be in [0, 1]");
    }
    if (budget < static_cast<std::uint64_t>(np)) {
        throw ValidationError("DE: budget must cover one population");
    }

    TrajectoryLog log;
    log.algorithm = Algorithm::differential_evolution;
    log.function_id = problem.function_id();
    log.dimension = dim;
    log.seed = seed;
    log.budget = budget;
    log.pop_size = static_cast<std::uint32_t>(np);

    detail::BudgetedEval eval(problem, budget, log, /*record=*/true);
    Rng rng(seed);
    const double lo = problem.lower_bound();
    const double hi = problem.upper_bound();
    const auto n = static_cast<std::size_t>(np);
    const auto d = static_cast<std::size_t>(dim);

    std::vector<std::vector<double>> pop(n, std::vector<double>(d));
    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& xi : pop[i]) xi = rng.uniform(lo, hi);
        fit[i] = *eval(pop[i]);  // budget >= np, cannot be exhausted here
    }

    std::vector<std::vector<double>> next_pop = pop;
    std::vector<double> next_fit = fit;
    std::vector<double> trial(d);
    bool out_of_budget = false;
    while (!out_of_budget) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r1 = rng.bounded(n);
            while (r1 == i) r1 = rng.bounded(n);
            std::size_t r2 = rng.bounded(n);
            while (r2 == i || r2 == r1) r2 = rng.bounded(n);
            std::size_t r3 = rng.bounded(n);
            while (r3 == i || r3 == r1 || r3 == r2) r3 = rng.bounded(n);

            const std::size_t jrand = rng.bounded(d);
            for (std::size_t j = 0; j < d; ++j) {
                const double u = rng.uniform();
                if (u < params.crossover_rate || j == jrand) {
                    trial[j] = pop[r1][j] + params.scale_factor * (pop[r2][j] - pop[r3][j]);
                } else {
                    trial[j] = pop[i][j];
                }
            }
            detail::clamp_to_bounds(trial, lo, hi);

            const auto f = eval(trial);
            if (!f) {
                out_of_budget = true;
                break;
            }
            if (*f <= fit[i]) {
                next_pop[i] = trial;
                next_fit[i] = *f;
            } else {
                next_pop[i] = pop[i];
                next_fit[i] = fit[i];
            }
        }
        pop = next_pop;
        fit = next_fit;
    }
    log.final_evals = eval.used();
    return log;
}

}  // namespace stallnet
