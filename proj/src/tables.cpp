#include "stallnet/tables.hpp"

#include <cmath>

#include "stallnet/numfmt.hpp"

namespace stallnet {

std::string metrics_csv(std::span<const MetricsRow> rows) {
    std::string out{kMetricsCsvHeader};
    out += '\n';
    for (const MetricsRow& row : rows) {
        out += to_string(row.function_id);
        out += ',' + std::to_string(row.dimension);
        out += ',';
        out += to_string(row.algorithm);
        out += ',';
        out += to_string(row.model);
        out += ',' + std::to_string(row.beta);
        out += ',' + format_double(row.epsilon);
        out += ',' + std::to_string(row.nodes);
        out += ',' + std::to_string(row.edges);
        out += ',';
        if (row.md) append_double(out, *row.md);
        out += row.gopt_present ? ",true\n" : ",false\n";
    }
    return out;
}

std::string overlap_csv(std::span<const std::string> labels,
                        const std::vector<std::vector<double>>& matrix) {
    std::string out = "config";
    for (const std::string& label : labels) out += ',' + label;
    out += '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out += labels[i];
        for (double v : matrix[i]) {
            out += ',';
            if (!std::isnan(v)) append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace stallnet
