#pragma once

#include <span>
#include <string>
#include <vector>

#include "stallnet/metrics.hpp"

namespace stallnet {

inline constexpr std::string_view kMetricsCsvHeader =
    "function_id,dimension,algorithm,model,beta,epsilon,nodes,edges,md,gopt_present";

// One row per MetricsRow; md is an empty field when absent, numbers are shortest
// round-trip decimals.
std::string metrics_csv(std::span<const MetricsRow> rows);

// Square matrix with config labels on both axes; cell (i, j) is the median overlap
// of config i against config j. NaN cells are written empty.
std::string overlap_csv(std::span<const std::string> labels,
                        const std::vector<std::vector<double>>& matrix);

}  // namespace stallnet
