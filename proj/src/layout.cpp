#include "stallnet/layout.hpp"

#include <cmath>

#include "stallnet/error.hpp"
#include "stallnet/linalg.hpp"

namespace stallnet {

// Classical (Torgerson) MDS of the pairwise Euclidean distances. For Euclidean
// distances the double-centered Gram matrix is Xc * Xc^T with Xc the centered
// coordinate matrix, so its top eigenpairs are obtained from the D x D scatter
// matrix Xc^T * Xc; coordinates are the projections onto the top-2 axes.
LayoutedNetwork layout(const Network& net) {
    if (net.dimension < 2) throw ValidationError("layout: dimension must be >= 2");

    LayoutedNetwork out;
    out.network = net;

    if (net.dimension == 2) {
        out.layout_method = LayoutMethod::direct_2d;
        for (const auto& [key, data] : net.nodes) {
            out.positions[key] = {data.representative[0], data.representative[1]};
        }
        return out;
    }

    out.layout_method = LayoutMethod::classical_mds;
    const auto d = static_cast<std::size_t>(net.dimension);
    const std::size_t n = net.nodes.size();
    if (n == 0) return out;

    std::vector<double> mean(d, 0.0);
    for (const auto& [key, data] : net.nodes) {
        for (std::size_t k = 0; k < d; ++k) mean[k] += data.representative[k];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<double> scatter(d * d, 0.0);
    std::vector<double> centered(d);
    for (const auto& [key, data] : net.nodes) {
        for (std::size_t k = 0; k < d; ++k) centered[k] = data.representative[k] - mean[k];
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) scatter[r * d + c] += centered[r] * centered[c];
        }
    }

    SymEigen eig = sym_eigen(scatter, d);

    // Two principal axes; sign fixed so the first nonzero loading is positive.
    std::vector<std::vector<double>> axes(2, std::vector<double>(d, 0.0));
    for (std::size_t a = 0; a < 2 && a < d; ++a) {
        if (!(eig.values[a] > 0.0)) continue;  // degenerate direction stays zero
        double sign = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double v = eig.vectors[k * d + a];
            if (std::abs(v) > 1e-12) {
                sign = v > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        if (sign == 0.0) continue;
        for (std::size_t k = 0; k < d; ++k) axes[a][k] = sign * eig.vectors[k * d + a];
    }

    for (const auto& [key, data] : net.nodes) {
        std::array<double, 2> pos{0.0, 0.0};
        for (std::size_t a = 0; a < 2; ++a) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                acc += (data.representative[k] - mean[k]) * axes[a][k];
            }
            pos[a] = acc;
        }
        out.positions[key] = pos;
    }
    return out;
}

}  // namespace stallnet
