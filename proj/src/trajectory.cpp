#include "stallnet/trajectory.hpp"

#include <cmath>
#include <string>

#include "stallnet/error.hpp"

namespace stallnet {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::random_search: return "RS";
        case Algorithm::differential_evolution: return "DE";
        case Algorithm::cmaes: return "CMA";
        case Algorithm::basin_hopping: return "MBH";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
    for (Algorithm a : {Algorithm::random_search, Algorithm::differential_evolution,
                        Algorithm::cmaes, Algorithm::basin_hopping}) {
        if (name == to_string(a)) return a;
    }
    return std::nullopt;
}

void validate_log(const TrajectoryLog& log) {
    if (log.dimension < 1) throw ValidationError("log: dimension must be positive");
    if (log.pop_size < 1) throw ValidationError("log: pop_size must be positive");
    if (log.final_evals > log.budget) throw ValidationError("log: final_evals exceeds budget");
    const ImprovementEvent* prev = nullptr;
    for (const ImprovementEvent& e : log.events) {
        if (static_cast<int>(e.genotype.size()) != log.dimension) {
            throw ValidationError("log: genotype length differs from dimension");
        }
        if (!std::isfinite(e.fitness)) throw ValidationError("log: non-finite fitness");
        for (double c : e.genotype) {
            if (!std::isfinite(c)) throw ValidationError("log: non-finite coordinate");
        }
        if (prev == nullptr) {
            if (e.evals < 1) throw ValidationError("log: first event before evaluation 1");
        } else {
            if (e.evals <= prev->evals) {
                throw ValidationError("log: events not strictly increasing in evaluations");
            }
            if (!(e.fitness < prev->fitness)) {
                throw ValidationError("log: events not strictly decreasing in fitness");
            }
        }
        prev = &e;
    }
    if (prev != nullptr && prev->evals > log.final_evals) {
        throw ValidationError("log: last event after final_evals");
    }
}

}  // namespace stallnet
