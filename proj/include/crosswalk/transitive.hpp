#pragma once

#include <cstdint>
#include <span>

#include "crosswalk/catalog.hpp"
#include "crosswalk/pathgraph.hpp"
#include "crosswalk/strategy.hpp"

namespace crosswalk {

struct TransitiveOptions {
    // In-flight chain limit per path; exceeding it is an error rather than a
    // silent truncation.
    std::uint64_t per_path_result_cap = 1'000'000;

    // When set, chain starts/ends must also resolve in these catalogs, not
    // just match the id patterns.
    const Catalog* source_catalog = nullptr;
    const Catalog* target_catalog = nullptr;
};

// Strategy M1: hop-by-hop relational join of mapping-set links along each
// path. A technique maps to a task iff a chain x0 <-> x1 <-> ... <-> xk exists
// with every consecutive pair linked on that hop. One candidate per distinct
// (technique, task) across all paths, carrying the first witnessing chain.
//
// `mapping_sets` must be the same list `graph` was built from.
std::vector<CandidateMapping> run_transitive(const FrameworkGraph& graph,
                                             std::span<const SimplePath> paths,
                                             std::span<const MappingSet> mapping_sets,
                                             const TransitiveOptions& options = {});

}  // namespace crosswalk
