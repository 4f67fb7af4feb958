#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "crosswalk/catalog.hpp"

namespace crosswalk {

// The technique x task pairing space between the attack and psscrm catalogs.
//
// membership_pair_count counts technique-tactic memberships times tasks: a
// technique under two tactics is counted once per membership. distinct_pairs
// holds each (technique, task) pair exactly once, sorted.
struct PairUniverse {
    std::uint64_t technique_tactic_memberships = 0;
    std::uint64_t task_count = 0;
    std::uint64_t membership_pair_count = 0;
    std::vector<std::pair<ItemId, ItemId>> distinct_pairs;
};

// include_subtechniques adds sub-techniques as pairable items; a sub-technique
// inherits the tactic memberships of its parent technique(s). Which choice
// reproduces a given corpus total is a property of the data, so it stays a
// caller decision.
PairUniverse item_pairs_universe(const Catalog& attack, const Catalog& psscrm,
                                 bool include_subtechniques = false);

}  // namespace crosswalk
