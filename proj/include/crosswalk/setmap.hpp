#pragma once

#include <vector>

#include "crosswalk/mapping_set.hpp"
#include "crosswalk/strategy.hpp"

namespace crosswalk {

// Strategy M3: relational join on mitigation id. The first set links attack
// techniques to attack mitigations (an intra-attack set); the second links
// attack mitigations to psscrm tasks. One candidate per distinct (technique,
// task); evidence lists every witnessing mitigation.
std::vector<CandidateMapping> run_setmap(const MappingSet& technique_mitigation_links,
                                         const MappingSet& mitigation_task_links);

}  // namespace crosswalk
