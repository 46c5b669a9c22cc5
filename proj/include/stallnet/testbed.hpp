#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stallnet {

enum class FunctionId : int {
    sphere = 0,
    rosenbrock = 1,
    rastrigin = 2,
    schaffer_f7 = 3,
    gallagher = 4,
    constant = 5,  // flat fitness; test utility, not part of the catalog
};

std::string_view to_string(FunctionId id);
std::optional<FunctionId> function_from_string(std::string_view name);

// A bounded continuous minimisation benchmark with a known optimum. Immutable after
// construction; evaluate() is safe to call from many threads concurrently.
class Problem {
public:
    // shift_seed, when given, relocates the optimum by a seeded offset in [-1, 1]^D.
    static Problem make(FunctionId id, int dimension,
                        std::optional<std::uint64_t> shift_seed = std::nullopt);

    double evaluate(std::span<const double> x) const;

    FunctionId function_id() const { return id_; }
    int dimension() const { return dimension_; }
    double lower_bound() const { return lower_; }
    double upper_bound() const { return upper_; }
    double f_opt() const { return f_opt_; }
    const std::vector<double>& x_opt() const { return x_opt_; }

    // Count of evaluate() calls on this instance, for evaluation accounting checks.
    std::uint64_t evaluations() const { return eval_count_.load(std::memory_order_relaxed); }
    void reset_evaluations() const { eval_count_.store(0, std::memory_order_relaxed); }

    Problem(const Problem& other);
    Problem& operator=(const Problem& other);
    Problem(Problem&& other) noexcept;
    Problem& operator=(Problem&& other) noexcept;

private:
    Problem() = default;

    double evaluate_base(std::span<const double> z) const;

    FunctionId id_{};
    int dimension_ = 0;
    double lower_ = -5.0;
    double upper_ = 5.0;
    double f_opt_ = 0.0;
    std::vector<double> x_opt_;
    std::vector<double> shift_;  // empty when unshifted

    // Gallagher-style peaks, fixed per (function, dimension).
    struct Peak {
        std::vector<double> center;
        double height;
        double width;
    };
    std::vector<Peak> peaks_;

    mutable std::atomic<std::uint64_t> eval_count_{0};
};

// All supported (function, dimension) pairs: the five benchmark families at D = 2 and 10.
std::vector<Problem> catalog();

// Catalog entry lookup; throws ValidationError when the pair is not in the catalog.
Problem catalog_problem(FunctionId id, int dimension);

}  // namespace stallnet
