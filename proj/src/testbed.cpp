#include "stallnet/testbed.hpp"

#include <cmath>
#include <string>

#include "stallnet/error.hpp"
#include "stallnet/rng.hpp"

namespace stallnet {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Seed base for the fixed Gallagher peak sets; part of the function definition.
constexpr std::uint64_t kPeakSeedBase = 0x6A11A6BEEFULL;
constexpr int kPeakCount = 21;

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double xi : x) s += xi * xi - 10.0 * std::cos(kTwoPi * xi);
    return s;
}

double schaffer_f7(std::span<const double> x) {
    const std::size_t d = x.size();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double s = std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]);
        const double sn = std::sin(50.0 * std::pow(s, 0.2));
        acc += std::sqrt(s) * (1.0 + sn * sn);
    }
    acc /= static_cast<double>(d - 1);
    return acc * acc;
}

}  // namespace

std::string_view to_string(FunctionId id) {
    switch (id) {
        case FunctionId::sphere: return "sphere";
        case FunctionId::rosenbrock: return "rosenbrock";
        case FunctionId::rastrigin: return "rastrigin";
        case FunctionId::schaffer_f7: return "schaffer_f7";
        case FunctionId::gallagher: return "gallagher";
        case FunctionId::constant: return "constant";
    }
    return "unknown";
}

std::optional<FunctionId> function_from_string(std::string_view name) {
    for (FunctionId id : {FunctionId::sphere, FunctionId::rosenbrock, FunctionId::rastrigin,
                          FunctionId::schaffer_f7, FunctionId::gallagher, FunctionId::constant}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

Problem Problem::make(FunctionId id, int dimension, std::optional<std::uint64_t> shift_seed) {
    if (dimension < 1) throw ValidationError("dimension must be positive");
    if ((id == FunctionId::rosenbrock || id == FunctionId::schaffer_f7) && dimension < 2) {
        throw ValidationError(std::string(to_string(id)) + " requires dimension >= 2");
    }

    Problem p;
    p.id_ = id;
    p.dimension_ = dimension;
    p.f_opt_ = 0.0;
    p.x_opt_.assign(static_cast<std::size_t>(dimension), 0.0);

    switch (id) {
        case FunctionId::rosenbrock:
            p.x_opt_.assign(static_cast<std::size_t>(dimension), 1.0);
            break;
        case FunctionId::gallagher: {
            // Fixed peak layout per dimension; the first peak is the global optimum.
            Rng rng(derive_seed(kPeakSeedBase, {static_cast<std::uint64_t>(id),
                                                static_cast<std::uint64_t>(dimension)}));
            p.peaks_.resize(kPeakCount);
            for (int i = 0; i < kPeakCount; ++i) {
                Peak& peak = p.peaks_[static_cast<std::size_t>(i)];
                peak.center.resize(static_cast<std::size_t>(dimension));
                for (double& c : peak.center) c = rng.uniform(-4.0, 4.0);
                peak.height = (i == 0) ? 10.0 : rng.uniform(1.5, 9.5);
                peak.width = rng.uniform(0.8, 2.5);
            }
            p.x_opt_ = p.peaks_[0].center;
            break;
        }
        default:
            break;
    }

    if (shift_seed) {
        Rng rng(derive_seed(*shift_seed, {static_cast<std::uint64_t>(id),
                                          static_cast<std::uint64_t>(dimension)}));
        p.shift_.resize(static_cast<std::size_t>(dimension));
        for (double& s : p.shift_) s = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < dimension; ++i) {
            p.x_opt_[static_cast<std::size_t>(i)] += p.shift_[static_cast<std::size_t>(i)];
        }
    }
    return p;
}

double Problem::evaluate_base(std::span<const double> z) const {
    switch (id_) {
        case FunctionId::sphere: return sphere(z);
        case FunctionId::rosenbrock: return rosenbrock(z);
        case FunctionId::rastrigin: return rastrigin(z);
        case FunctionId::schaffer_f7: return schaffer_f7(z);
        case FunctionId::gallagher: {
            double best = 0.0;
            for (const Peak& peak : peaks_) {
                double d2 = 0.0;
                for (std::size_t i = 0; i < z.size(); ++i) {
                    const double d = z[i] - peak.center[i];
                    d2 += d * d;
                }
                const double denom =
                    2.0 * static_cast<double>(dimension_) * peak.width * peak.width;
                const double v = peak.height * std::exp(-d2 / denom);
                if (v > best) best = v;
            }
            return 10.0 - best;
        }
        case FunctionId::constant: return 0.0;
    }
    throw ValidationError("unknown function id");
}

double Problem::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension_) {
        throw ValidationError("evaluate: expected " + std::to_string(dimension_) +
                              " coordinates, got " + std::to_string(x.size()));
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) throw ValidationError("evaluate: non-finite coordinate");
    }
    eval_count_.fetch_add(1, std::memory_order_relaxed);
    if (shift_.empty()) return evaluate_base(x);

    double buf[64];
    std::vector<double> heap;
    std::span<double> z;
    if (x.size() <= 64) {
        z = std::span<double>(buf, x.size());
    } else {
        heap.resize(x.size());
        z = heap;
    }
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - shift_[i];
    return evaluate_base(z);
}

Problem::Problem(const Problem& other)
    : id_(other.id_), dimension_(other.dimension_), lower_(other.lower_), upper_(other.upper_),
      f_opt_(other.f_opt_), x_opt_(other.x_opt_), shift_(other.shift_), peaks_(other.peaks_),
      eval_count_(other.eval_count_.load(std::memory_order_relaxed)) {}

Problem& Problem::operator=(const Problem& other) {
    if (this != &other) {
        id_ = other.id_;
        dimension_ = other.dimension_;
        lower_ = other.lower_;
        upper_ = other.upper_;
        f_opt_ = other.f_opt_;
        x_opt_ = other.x_opt_;
        shift_ = other.shift_;
        peaks_ = other.peaks_;
        eval_count_.store(other.eval_count_.load(std::memory_order_relaxed),
                          std::memory_order_relaxed);
    }
    return *this;
}

Problem::Problem(Problem&& other) noexcept
    : id_(other.id_), dimension_(other.dimension_), lower_(other.lower_), upper_(other.upper_),
      f_opt_(other.f_opt_), x_opt_(std::move(other.x_opt_)), shift_(std::move(other.shift_)),
      peaks_(std::move(other.peaks_)),
      eval_count_(other.eval_count_.load(std::memory_order_relaxed)) {}

Problem& Problem::operator=(Problem&& other) noexcept {
    if (this != &other) {
        id_ = other.id_;
        dimension_ = other.dimension_;
        lower_ = other.lower_;
        upper_ = other.upper_;
        f_opt_ = other.f_opt_;
        x_opt_ = std::move(other.x_opt_);
        shift_ = std::move(other.shift_);
        peaks_ = std::move(other.peaks_);
        eval_count_.store(other.eval_count_.load(std::memory_order_relaxed),
                          std::memory_order_relaxed);
    }
    return *this;
}

std::vector<Problem> catalog() {
    std::vector<Problem> out;
    for (FunctionId id : {FunctionId::sphere, FunctionId::rosenbrock, FunctionId::rastrigin,
                          FunctionId::schaffer_f7, FunctionId::gallagher}) {
        for (int dim : {2, 10}) out.push_back(Problem::make(id, dim));
    }
    return out;
}

Problem catalog_problem(FunctionId id, int dimension) {
    for (Problem& p : catalog()) {
        if (p.function_id() == id && p.dimension() == dimension) return std::move(p);
    }
    throw ValidationError("not a catalog problem: " + std::string(to_string(id)) + " at D=" +
                          std::to_string(dimension));
}

}  // namespace stallnet
