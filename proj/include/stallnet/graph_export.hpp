#pragma once

#include <string>

#include "stallnet/layout.hpp"

namespace stallnet {

enum class GraphFormat { graphml, dot };

// Nodes carry best_fitness, visit_count (runs that reached the location; the
// intended size scale), stall_total, x, y. Edges carry weight and
// median_differential. Node ids are n0, n1, ... in key order.
std::string export_graphml(const LayoutedNetwork& lnet);
std::string export_dot(const LayoutedNetwork& lnet);
std::string export_graph(const LayoutedNetwork& lnet, GraphFormat format);

}  // namespace stallnet
