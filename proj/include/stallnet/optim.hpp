#pragma once

#include <cstdint>

#include "stallnet/testbed.hpp"
#include "stallnet/trajectory.hpp"

namespace stallnet {

enum class BoundHandling { saturate };
enum class LocalSearch { nelder_mead };

struct DEParams {
    int pop_size = 0;  // 0: dimensionality default (same as CMA-ES lambda)
    double scale_factor = 0.5;     // F
    double crossover_rate = 0.5;   // Cr
    BoundHandling bound_handling = BoundHandling::saturate;
};

struct CMAParams {
    int lambda = 0;       // 0: 4 + floor(3 ln D)
    double sigma0 = 2.0;  // 20% of the [-5, 5] range
};

struct MBHParams {
    int stall_limit = 1000;          // consecutive non-improving hops before stopping
    double perturbation_scale = 0.1; // fraction of the box range
    LocalSearch local_search = LocalSearch::nelder_mead;
};

// 4 + floor(3 ln D): 6 at D=2, 10 at D=10. Shared by CMA-ES and DE.
int default_population(int dimension);

// Per-dimension evaluation budget default: 10,000 for D <= 2, 50,000 above.
std::uint64_t default_budget(int dimension);

TrajectoryLog run_random_search(const Problem& problem, std::uint64_t budget, std::uint64_t seed);
TrajectoryLog run_de(const Problem& problem, std::uint64_t budget, std::uint64_t seed,
                     const DEParams& params = {});
TrajectoryLog run_cmaes(const Problem& problem, std::uint64_t budget, std::uint64_t seed,
                        const CMAParams& params = {});
TrajectoryLog run_basin_hopping(const Problem& problem, std::uint64_t budget, std::uint64_t seed,
                                const MBHParams& params = {});

TrajectoryLog run_algorithm(Algorithm algo, const Problem& problem, std::uint64_t budget,
                            std::uint64_t seed);

}  // namespace stallnet
