#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pid/distribution.hpp"
#include "pid/sources.hpp"

namespace pid {

/// Names accepted by evaluate_measure, in display order.
const std::vector<std::string>& measure_names();
bool is_measure(std::string_view name);

/// Evaluates a named measure in bits. Measures defined on the source
/// variables themselves (i_total, s_wms, s_wb, s_delta_i, s_dep) ignore
/// `coll` and use every non-target variable. ArgumentError for unknown names.
double evaluate_measure(std::string_view name, const JointDistribution& dist,
                        const VariableSet& target, const SourceCollection& coll,
                        std::uint64_t seed = 0);

}  // namespace pid
