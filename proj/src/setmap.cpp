#include "crosswalk/setmap.hpp"

#include <map>
#include <set>

#include "crosswalk/errors.hpp"

namespace crosswalk {

std::vector<CandidateMapping> run_setmap(const MappingSet& technique_mitigation_links,
                                         const MappingSet& mitigation_task_links) {
    if (!technique_mitigation_links.connects(kAttackSlug, kAttackSlug)) {
        throw ValidationError("technique-mitigation set must connect attack to attack");
    }
    if (!mitigation_task_links.connects(kAttackSlug, kPsscrmSlug)) {
        throw ValidationError("mitigation-task set must connect attack to psscrm");
    }

    // mitigation local -> technique locals; ignores links that are not a
    // technique/mitigation pairing
    std::map<std::string, std::set<std::string>> techniques_by_mitigation;
    for (const Link& link : technique_mitigation_links.links()) {
        const std::string& one = link.a.local;
        const std::string& two = link.b.local;
        if (is_attack_technique_local(one) && is_attack_mitigation_local(two)) {
            techniques_by_mitigation[two].insert(one);
        } else if (is_attack_mitigation_local(one) && is_attack_technique_local(two)) {
            techniques_by_mitigation[one].insert(two);
        }
    }

    // (technique, task) -> witnessing mitigations
    std::map<std::pair<std::string, std::string>, std::set<std::string>> joined;
    for (const Link& link : mitigation_task_links.links()) {
        if (!is_attack_mitigation_local(link.a.local)) continue;
        if (psscrm_depth(link.b.local) != 3) continue;
        auto it = techniques_by_mitigation.find(link.a.local);
        if (it == techniques_by_mitigation.end()) continue;
        for (const std::string& technique : it->second) {
            joined[{technique, link.b.local}].insert(link.a.local);
        }
    }

    std::vector<CandidateMapping> out;
    out.reserve(joined.size());
    for (const auto& [pair, mitigations] : joined) {
        out.push_back(CandidateMapping{
            ItemId{std::string(kAttackSlug), pair.first},
            ItemId{std::string(kPsscrmSlug), pair.second}, StrategyTag::m3_setmap,
            nlohmann::json{{"mitigations", std::vector<std::string>(mitigations.begin(),
                                                                    mitigations.end())}}});
    }
    return out;
}

}  // namespace crosswalk
