#include "pid/measures.hpp"

#include <algorithm>

#include "pid/channel_orders.hpp"
#include "pid/ci_union.hpp"
#include "pid/classic.hpp"
#include "pid/error.hpp"

namespace pid {

const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names{
        "i_total", "i_cup_ci", "s_ci",     "s_wms",    "i_min", "s_wb",
        "s_delta_i", "i_cap_d", "i_cup_vk", "s_d",     "s_dep",
    };
    return names;
}

bool is_measure(std::string_view name) {
    const auto& names = measure_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

double evaluate_measure(std::string_view name, const JointDistribution& dist,
                        const VariableSet& target, const SourceCollection& coll,
                        std::uint64_t seed) {
    if (name == "i_total") return mutual_information(dist, dist.complement(target), target);
    if (name == "i_cup_ci") return ci_union_information(dist, target, coll);
    if (name == "s_ci") return ci_synergy(dist, target, coll);
    if (name == "s_wms") return wms_synergy(dist, target);
    if (name == "i_min") return imin_redundancy(dist, target, coll);
    if (name == "s_wb") return wb_pid(dist, target).at("S_WB");
    if (name == "s_delta_i") return delta_i_synergy(dist, target);
    if (name == "i_cap_d") {
        DegradationOptions options;
        options.seed = seed;
        return degradation_redundancy(dist, target, coll, options).value;
    }
    if (name == "i_cup_vk") return vk_union_information(dist, target, coll).value;
    if (name == "s_d") return s_d(dist, target, coll);
    if (name == "s_dep") return dep_synergy(dist, target).at("S");
    throw ArgumentError("unknown measure '" + std::string(name) + "'");
}

}  // namespace pid
