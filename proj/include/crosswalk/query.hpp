#pragma once

#include <span>
#include <string>
#include <vector>

#include "crosswalk/triangulate.hpp"

namespace crosswalk {

struct QueryMatch {
    ItemId counterpart;
    std::set<StrategyTag> strategies;
    bool all_four = false;
    bool inherited = false;  // rollup hit recorded at the parent technique
    std::vector<std::string> evidence_summaries;
};

struct QueryResult {
    ItemId subject;
    std::vector<QueryMatch> matches;  // consensus desc, then id, exact before inherited
    Provenance provenance;
    std::string warning;  // set when the subject is absent from the mapping set
};

// Exact-id lookup; with rollup a sub-technique query also returns mappings
// recorded at its parent technique, flagged inherited. An unknown (but
// well-formed) id yields an empty result with a warning, not a failure.
QueryResult query_by_technique(std::span<const TriangulatedMapping> mappings,
                               const Provenance& provenance, const ItemId& technique,
                               bool rollup = false);

QueryResult query_by_task(std::span<const TriangulatedMapping> mappings,
                          const Provenance& provenance, const ItemId& task);

struct TraceResult {
    bool found = false;
    std::string text;  // per-strategy evidence sections, or a not-found note
};

// Full evidence bundle for one pair: m1 item chains, m2 transcripts, m3
// mitigation ids, m4 quotes with report ids.
TraceResult trace_pair(std::span<const TriangulatedMapping> mappings, const ItemId& technique,
                       const ItemId& task);

}  // namespace crosswalk
