#pragma once

#include <array>
#include <map>

#include "stallnet/netbuild.hpp"

namespace stallnet {

enum class LayoutMethod { direct_2d, classical_mds };

struct LayoutedNetwork {
    Network network;
    std::map<NodeKey, std::array<double, 2>> positions;
    LayoutMethod layout_method = LayoutMethod::direct_2d;
};

// 2-D problems: node positions are the representative genotypes. Higher dimensions:
// classical (Torgerson) MDS of the pairwise Euclidean distances between
// representatives, deterministic sign convention (first nonzero loading positive).
LayoutedNetwork layout(const Network& net);

}  // namespace stallnet
