#include "stallnet/graph_export.hpp"

#include <map>

#include "stallnet/metrics.hpp"
#include "stallnet/numfmt.hpp"

namespace stallnet {
namespace {

std::map<NodeKey, std::string> node_ids(const Network& net) {
    std::map<NodeKey, std::string> ids;
    std::size_t i = 0;
    for (const auto& [key, data] : net.nodes) ids[key] = "n" + std::to_string(i++);
    return ids;
}

double edge_median(const EdgeData& edge) {
    std::vector<double> d(edge.differentials.begin(), edge.differentials.end());
    return aggregate(d).median;
}

}  // namespace

std::string export_graphml(const LayoutedNetwork& lnet) {
    const Network& net = lnet.network;
    const auto ids = node_ids(net);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += "  <key id=\"d0\" for=\"node\" attr.name=\"best_fitness\" attr.type=\"double\"/>\n";
    out += "  <key id=\"d1\" for=\"node\" attr.name=\"visit_count\" attr.type=\"long\"/>\n";
    out += "  <key id=\"d2\" for=\"node\" attr.name=\"stall_total\" attr.type=\"long\"/>\n";
    out += "  <key id=\"d3\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n";
    out += "  <key id=\"d4\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
    out += "  <key id=\"e0\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
    out +=
        "  <key id=\"e1\" for=\"edge\" attr.name=\"median_differential\" attr.type=\"double\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (const auto& [key, data] : net.nodes) {
        const auto& pos = lnet.positions.at(key);
        out += "    <node id=\"" + ids.at(key) + "\">";
        out += "<data key=\"d0\">" + format_double(data.best_fitness) + "</data>";
        out += "<data key=\"d1\">" + std::to_string(data.run_count) + "</data>";
        out += "<data key=\"d2\">" + std::to_string(data.stall_total) + "</data>";
        out += "<data key=\"d3\">" + format_double(pos[0]) + "</data>";
        out += "<data key=\"d4\">" + format_double(pos[1]) + "</data>";
        out += "</node>\n";
    }
    for (const auto& [endpoints, edge] : net.edges) {
        out += "    <edge source=\"" + ids.at(endpoints.first) + "\" target=\"" +
               ids.at(endpoints.second) + "\">";
        out += "<data key=\"e0\">" + std::to_string(edge.count) + "</data>";
        out += "<data key=\"e1\">" + format_double(edge_median(edge)) + "</data>";
        out += "</edge>\n";
    }
    out += "  </graph>\n";
    out += "</graphml>\n";
    return out;
}

std::string export_dot(const LayoutedNetwork& lnet) {
    const Network& net = lnet.network;
    const auto ids = node_ids(net);

    std::string out = "digraph stallnet {\n";
    for (const auto& [key, data] : net.nodes) {
        const auto& pos = lnet.positions.at(key);
        out += "  " + ids.at(key) + " [best_fitness=" + format_double(data.best_fitness) +
               ", visit_count=" + std::to_string(data.run_count) +
               ", stall_total=" + std::to_string(data.stall_total) +
               ", x=" + format_double(pos[0]) + ", y=" + format_double(pos[1]) + "];\n";
    }
    for (const auto& [endpoints, edge] : net.edges) {
        out += "  " + ids.at(endpoints.first) + " -> " + ids.at(endpoints.second) +
               " [weight=" + std::to_string(edge.count) +
               ", median_differential=" + format_double(edge_median(edge)) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string export_graph(const LayoutedNetwork& lnet, GraphFormat format) {
    return format == GraphFormat::graphml ? export_graphml(lnet) : export_dot(lnet);
}

}  // namespace stallnet
