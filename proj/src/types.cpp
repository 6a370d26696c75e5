#include "cfi/types.hpp"

#include <map>
#include <set>

namespace cfi {

void HierarchySpec::validate() const {
    if (groups.empty())
        throw Error(ErrorCode::InvalidConfig, "hierarchy has no groups");
    if (indicators.empty())
        throw Error(ErrorCode::InvalidConfig, "hierarchy has no indicators");

    std::set<std::string> group_ids;
    std::map<std::string, std::string> member_to_group;
    for (const auto& g : groups) {
        if (!group_ids.insert(g.id).second)
            throw Error(ErrorCode::InvalidConfig, "duplicate group id '" + g.id + "'");
        if (g.members.empty())
            throw Error(ErrorCode::InvalidConfig, "group '" + g.id + "' has no members");
        for (const auto& m : g.members) {
            if (!member_to_group.emplace(m, g.id).second)
                throw Error(ErrorCode::InvalidConfig,
                            "indicator '" + m + "' listed in more than one group");
        }
    }

    std::set<std::string> indicator_ids;
    for (const auto& ind : indicators) {
        if (!indicator_ids.insert(ind.id).second)
            throw Error(ErrorCode::InvalidConfig, "duplicate indicator id '" + ind.id + "'");
        auto it = member_to_group.find(ind.id);
        if (it == member_to_group.end())
            throw Error(ErrorCode::InvalidConfig,
                        "indicator '" + ind.id + "' belongs to no group");
        if (!ind.group.empty() && ind.group != it->second)
            throw Error(ErrorCode::InvalidConfig,
                        "indicator '" + ind.id + "' declares group '" + ind.group +
                            "' but is listed under '" + it->second + "'");
    }
    for (const auto& [member, gid] : member_to_group) {
        if (indicator_ids.find(member) == indicator_ids.end())
            throw Error(ErrorCode::InvalidConfig,
                        "group '" + gid + "' lists unknown indicator '" + member + "'");
    }
}

std::vector<std::string> HierarchySpec::indicator_order() const {
    std::vector<std::string> order;
    for (const auto& g : groups)
        order.insert(order.end(), g.members.begin(), g.members.end());
    return order;
}

const IndicatorSpec& HierarchySpec::indicator(const std::string& id) const {
    for (const auto& ind : indicators)
        if (ind.id == id) return ind;
    throw Error(ErrorCode::UnknownIndicator, "unknown indicator '" + id + "'");
}

const GroupSpec& HierarchySpec::group(const std::string& id) const {
    for (const auto& g : groups)
        if (g.id == id) return g;
    throw Error(ErrorCode::InvalidConfig, "unknown group '" + id + "'");
}

}  // namespace cfi
