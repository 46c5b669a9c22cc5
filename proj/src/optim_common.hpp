#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <span>

#include "stallnet/testbed.hpp"
#include "stallnet/trajectory.hpp"

namespace stallnet::detail {

// Counts evaluations against the budget and, when recording, appends an
// ImprovementEvent on every strict best-so-far improvement (the first evaluation
// always improves over the empty history).
class BudgetedEval {
public:
    BudgetedEval(const Problem& problem, std::uint64_t budget, TrajectoryLog& log, bool record)
        : problem_(problem), budget_(budget), log_(log), record_(record) {}

    // nullopt once the budget is exhausted.
    std::optional<double> operator()(std::span<const double> x) {
        if (used_ >= budget_) return std::nullopt;
        const double f = problem_.evaluate(x);
        ++used_;
        if (f < best_) {
            best_ = f;
            if (record_) {
                log_.events.push_back(
                    ImprovementEvent{used_, f, std::vector<double>(x.begin(), x.end())});
            }
        }
        return f;
    }

    // Manual event append for runners that log something other than raw evaluations.
    void append_event(double fitness, std::span<const double> x) {
        log_.events.push_back(
            ImprovementEvent{used_, fitness, std::vector<double>(x.begin(), x.end())});
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t remaining() const { return budget_ - used_; }
    bool exhausted() const { return used_ >= budget_; }
    double best() const { return best_; }

private:
    const Problem& problem_;
    std::uint64_t budget_;
    TrajectoryLog& log_;
    bool record_;
    std::uint64_t used_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
};

inline void clamp_to_bounds(std::span<double> x, double lo, double hi) {
    for (double& xi : x) xi = std::clamp(xi, lo, hi);
}

}  // namespace stallnet::detail
