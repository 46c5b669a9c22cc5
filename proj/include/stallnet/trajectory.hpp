#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "stallnet/testbed.hpp"

namespace stallnet {

enum class Algorithm : int {
    random_search = 0,
    differential_evolution = 1,
    cmaes = 2,
    basin_hopping = 3,
};

// Short labels used in file names, log metadata and CSV: RS, DE, CMA, MBH.
std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

// One strict improvement of the best-so-far solution.
struct ImprovementEvent {
    std::uint64_t evals = 0;  // fitness evaluations elapsed when the improvement happened
    double fitness = 0.0;
    std::vector<double> genotype;
};

// Everything one optimizer run leaves behind. Events are strictly increasing in
// evals and strictly decreasing in fitness; the basin-hopping runner records only
// accepted local optima (each acceptance is a best-so-far improvement).
struct TrajectoryLog {
    Algorithm algorithm = Algorithm::random_search;
    FunctionId function_id = FunctionId::sphere;
    int dimension = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint32_t pop_size = 1;  // evaluations per generation; 1 for RS and MBH
    std::uint64_t final_evals = 0;
    std::vector<ImprovementEvent> events;
};

// Throws ValidationError when any TrajectoryLog invariant is broken.
void validate_log(const TrajectoryLog& log);

}  // namespace stallnet
