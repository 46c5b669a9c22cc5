#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "optim_common.hpp"
#include "stallnet/error.hpp"
#include "stallnet/linalg.hpp"
#include "stallnet/optim.hpp"
#include "stallnet/rng.hpp"

namespace stallnet {
namespace {

constexpr double kEigenFloor = 1e-20;
constexpr double kSigmaFloor = 1e-16;

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

// Vanilla (mu/mu_w, lambda) CMA-ES: weighted recombination of the best mu samples,
// cumulative step-size adaptation, rank-one plus rank-mu covariance update. Samples
// are saturated to the box before evaluation and the saturated points feed the
// update. Eigenvalues and sigma are floored so stalling runs stay alive.
TrajectoryLog run_cmaes(const Problem& problem, std::uint64_t budget, std::uint64_t seed,
                        const CMAParams& params) {
    const int dim_i = problem.dimension();
    const auto dim = static_cast<std::size_t>(dim_i);
    const double dimd = static_cast<double>(dim_i);
    const int lambda_i = params.lambda > 0 ? params.lambda : default_population(dim_i);
    if (lambda_i < 2) throw ValidationError("CMA-ES: lambda must be >= 2");
    if (params.sigma0 <= 0.0) throw ValidationError("CMA-ES: sigma0 must be positive");
    if (budget < static_cast<std::uint64_t>(lambda_i)) {
        throw ValidationError("CMA-ES: budget must cover one generation");
    }
    const auto lambda = static_cast<std::size_t>(lambda_i);

    // Strategy constants from lambda and D.
    const std::size_t mu = lambda / 2;
    std::vector<double> weights(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        weights[i] = std::log((static_cast<double>(lambda) + 1.0) / 2.0) -
                     std::log(static_cast<double>(i + 1));
    }
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= wsum;
    double w2 = 0.0;
    for (double w : weights) w2 += w * w;
    const double mu_eff = 1.0 / w2;

    const double c_sigma = (mu_eff + 2.0) / (dimd + mu_eff + 5.0);
    const double d_sigma =
        1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (dimd + 1.0)) - 1.0) + c_sigma;
    const double c_c = (4.0 + mu_eff / dimd) / (dimd + 4.0 + 2.0 * mu_eff / dimd);
    const double c_1 = 2.0 / ((dimd + 1.3) * (dimd + 1.3) + mu_eff);
    const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                                ((dimd + 2.0) * (dimd + 2.0) + mu_eff));
    const double chi_n =
        std::sqrt(dimd) * (1.0 - 1.0 / (4.0 * dimd) + 1.0 / (21.0 * dimd * dimd));

    TrajectoryLog log;
    log.algorithm = Algorithm::cmaes;
    log.function_id = problem.function_id();
    log.dimension = dim_i;
    log.seed = seed;
    log.budget = budget;
    log.pop_size = static_cast<std::uint32_t>(lambda);

    detail::BudgetedEval eval(problem, budget, log, /*record=*/true);
    Rng rng(seed);
    const double lo = problem.lower_bound();
    const double hi = problem.upper_bound();

    std::vector<double> mean(dim);
    for (double& m : mean) m = rng.uniform(lo, hi);
    double sigma = params.sigma0;
    std::vector<double> cov(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) cov[i * dim + i] = 1.0;
    std::vector<double> p_sigma(dim, 0.0), p_c(dim, 0.0);

    std::vector<std::vector<double>> xs(lambda, std::vector<double>(dim));
    std::vector<std::vector<double>> ys(lambda, std::vector<double>(dim));
    std::vector<double> fs(lambda);
    std::vector<double> z(dim), y_w(dim), c_inv_y(dim);
    std::vector<std::size_t> order(lambda);

    std::uint64_t generation = 0;
    while (!eval.exhausted()) {
        SymEigen eig = sym_eigen(cov, dim);
        bool degenerate = false;
        for (double& v : eig.values) {
            if (!std::isfinite(v)) degenerate = true;
            v = std::max(v, kEigenFloor);
        }
        if (degenerate) break;
        std::vector<double> sqrt_d(dim);
        for (std::size_t i = 0; i < dim; ++i) sqrt_d[i] = std::sqrt(eig.values[i]);

        // Sample, saturate, evaluate.
        std::size_t evaluated = 0;
        for (std::size_t k = 0; k < lambda; ++k) {
            for (double& zi : z) zi = rng.normal();
            for (std::size_t r = 0; r < dim; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < dim; ++c) {
                    acc += eig.vectors[r * dim + c] * sqrt_d[c] * z[c];
                }
                xs[k][r] = mean[r] + sigma * acc;
            }
            detail::clamp_to_bounds(xs[k], lo, hi);
            for (std::size_t r = 0; r < dim; ++r) ys[k][r] = (xs[k][r] - mean[r]) / sigma;
            const auto f = eval(xs[k]);
            if (!f) break;
            fs[k] = *f;
            ++evaluated;
        }
        if (evaluated < lambda) break;  // partial generation does not update the state

        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });

        std::fill(y_w.begin(), y_w.end(), 0.0);
        for (std::size_t i = 0; i < mu; ++i) {
            for (std::size_t r = 0; r < dim; ++r) y_w[r] += weights[i] * ys[order[i]][r];
        }
        for (std::size_t r = 0; r < dim; ++r) mean[r] += sigma * y_w[r];

        // p_sigma update needs C^(-1/2) y_w = B diag(1/sqrt(d)) B^T y_w.
        for (std::size_t c = 0; c < dim; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < dim; ++r) acc += eig.vectors[r * dim + c] * y_w[r];
            z[c] = acc / sqrt_d[c];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) acc += eig.vectors[r * dim + c] * z[c];
            c_inv_y[r] = acc;
        }
        const double cs_coef = std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff);
        double ps_norm2 = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            p_sigma[r] = (1.0 - c_sigma) * p_sigma[r] + cs_coef * c_inv_y[r];
            ps_norm2 += p_sigma[r] * p_sigma[r];
        }
        const double ps_norm = std::sqrt(ps_norm2);

        ++generation;
        const double expected = std::sqrt(
            1.0 - std::pow(1.0 - c_sigma, 2.0 * static_cast<double>(generation)));
        const bool h_sigma = ps_norm / expected < (1.4 + 2.0 / (dimd + 1.0)) * chi_n;

        const double cc_coef = std::sqrt(c_c * (2.0 - c_c) * mu_eff);
        for (std::size_t r = 0; r < dim; ++r) {
            p_c[r] = (1.0 - c_c) * p_c[r] + (h_sigma ? cc_coef * y_w[r] : 0.0);
        }

        const double c1_adjust = h_sigma ? 0.0 : c_c * (2.0 - c_c);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                double v = (1.0 - c_1 - c_mu) * cov[r * dim + c] +
                           c_1 * (p_c[r] * p_c[c] + c1_adjust * cov[r * dim + c]);
                for (std::size_t i = 0; i < mu; ++i) {
                    v += c_mu * weights[i] * ys[order[i]][r] * ys[order[i]][c];
                }
                cov[r * dim + c] = v;
            }
        }

        sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));
        sigma = std::max(sigma, kSigmaFloor);
        if (!std::isfinite(sigma) || !all_finite(cov) || !all_finite(mean)) break;
    }
    log.final_evals = eval.used();
    return log;
}

}  // namespace stallnet
