#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "optim_common.hpp"
#include "stallnet/error.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"

namespace stallnet {
namespace {

constexpr double kSimplexStepFraction = 0.05;  // initial simplex edge, fraction of range
constexpr double kSpreadTol = 1e-10;           // simplex fitness spread at convergence
constexpr int kIterPerDim = 500;

struct NmOutcome {
    std::vector<double> x;
    double fitness = 0.0;
    bool converged = false;  // false: stopped because the budget ran out
};

// Nelder-Mead with box clamping (alpha=1, gamma=2, rho=0.5, shrink 0.5).
NmOutcome nelder_mead(detail::BudgetedEval& eval, std::span<const double> x0, double lo,
                      double hi) {
    const std::size_t n = x0.size();
    const double step = kSimplexStepFraction * (hi - lo);
    const int max_iter = kIterPerDim * static_cast<int>(n);

    std::vector<std::vector<double>> v(n + 1, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> f(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        double& c = v[j + 1][j];
        c = (c + step <= hi) ? c + step : c - step;
    }

    NmOutcome out;
    out.fitness = std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        detail::clamp_to_bounds(v[j], lo, hi);
        const auto fj = eval(v[j]);
        if (!fj) break;
        f[j] = *fj;
        ++evaluated;
        if (*fj < out.fitness) {
            out.fitness = *fj;
            out.x = v[j];
        }
    }
    if (evaluated < n + 1) return out;  // truncated; best vertex seen so far

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xx(n);
    auto try_eval = [&](const std::vector<double>& x) -> std::optional<double> {
        return eval(x);
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        const std::size_t best = order[0];
        const std::size_t second_worst = order[n - 1];
        const std::size_t worst = order[n];

        if (f[worst] - f[best] < kSpreadTol) {
            out.x = v[best];
            out.fitness = f[best];
            out.converged = true;
            return out;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += v[j][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + (centroid[k] - v[worst][k]);
        detail::clamp_to_bounds(xr, lo, hi);
        const auto fr = try_eval(xr);
        if (!fr) break;

        if (*fr < f[best]) {
            for (std::size_t k = 0; k < n; ++k) {
                xx[k] = centroid[k] + 2.0 * (xr[k] - centroid[k]);
            }
            detail::clamp_to_bounds(xx, lo, hi);
            const auto fe = try_eval(xx);
            if (!fe) break;
            if (*fe < *fr) {
                v[worst] = xx;
                f[worst] = *fe;
            } else {
                v[worst] = xr;
                f[worst] = *fr;
            }
        } else if (*fr < f[second_worst]) {
            v[worst] = xr;
            f[worst] = *fr;
        } else {
            bool shrink = false;
            if (*fr < f[worst]) {  // outside contraction
                for (std::size_t k = 0; k < n; ++k) {
                    xx[k] = centroid[k] + 0.5 * (xr[k] - centroid[k]);
                }
                detail::clamp_to_bounds(xx, lo, hi);
                const auto fc = try_eval(xx);
                if (!fc) break;
                if (*fc <= *fr) {
                    v[worst] = xx;
                    f[worst] = *fc;
                } else {
                    shrink = true;
                }
            } else {  // inside contraction
                for (std::size_t k = 0; k < n; ++k) {
                    xx[k] = centroid[k] + 0.5 * (v[worst][k] - centroid[k]);
                }
                detail::clamp_to_bounds(xx, lo, hi);
                const auto fc = try_eval(xx);
                if (!fc) break;
                if (*fc < f[worst]) {
                    v[worst] = xx;
                    f[worst] = *fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                bool truncated = false;
                for (std::size_t j = 0; j <= n; ++j) {
                    if (j == best) continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        v[j][k] = v[best][k] + 0.5 * (v[j][k] - v[best][k]);
                    }
                    detail::clamp_to_bounds(v[j], lo, hi);
                    const auto fs = try_eval(v[j]);
                    if (!fs) {
                        truncated = true;
                        break;
                    }
                    f[j] = *fs;
                }
                if (truncated) break;
            }
        }
    }

    // Iteration cap or budget stop: report the best vertex. Only the iteration cap
    // counts as convergence.
    std::size_t best = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        if (f[j] < f[best]) best = j;
    }
    if (f[best] < out.fitness) {
        out.x = v[best];
        out.fitness = f[best];
    }
    out.converged = !eval.exhausted();
    return out;
}

}  // namespace

// Monotonic basin-hopping: perturb the incumbent optimum, run Nelder-Mead, accept
// only strict improvements. Events are the accepted local optima; raw samples and
// local-search iterates are never logged.
TrajectoryLog run_basin_hopping(const Problem& problem, std::uint64_t budget,
                                std::uint64_t seed, const MBHParams& params) {
    if (params.stall_limit < 1) throw ValidationError("MBH: stall_limit must be >= 1");
    if (params.perturbation_scale <= 0.0) {
        throw ValidationError("MBH: perturbation scale must be positive");
    }
    if (budget < 1) throw ValidationError("MBH: budget must be >= 1");

    const auto dim = static_cast<std::size_t>(problem.dimension());
    TrajectoryLog log;
    log.algorithm = Algorithm::basin_hopping;
    log.function_id = problem.function_id();
    log.dimension = problem.dimension();
    log.seed = seed;
    log.budget = budget;
    log.pop_size = 1;

    detail::BudgetedEval eval(problem, budget, log, /*record=*/false);
    Rng rng(seed);
    const double lo = problem.lower_bound();
    const double hi = problem.upper_bound();
    const double hop = params.perturbation_scale * (hi - lo);

    std::vector<double> start(dim);
    for (double& xi : start) xi = rng.uniform(lo, hi);

    NmOutcome incumbent = nelder_mead(eval, start, lo, hi);
    if (incumbent.converged) {
        eval.append_event(incumbent.fitness, incumbent.x);
        int fails = 0;
        while (fails < params.stall_limit && !eval.exhausted()) {
            for (std::size_t k = 0; k < dim; ++k) {
                start[k] = incumbent.x[k] + hop * rng.normal();
            }
            detail::clamp_to_bounds(start, lo, hi);
            NmOutcome hop_result = nelder_mead(eval, start, lo, hi);
            if (!hop_result.converged) break;
            if (hop_result.fitness < incumbent.fitness) {
                incumbent = hop_result;
                eval.append_event(incumbent.fitness, incumbent.x);
                fails = 0;
            } else {
                ++fails;
            }
        }
    }
    log.final_evals = eval.used();
    return log;
}

}  // namespace stallnet
