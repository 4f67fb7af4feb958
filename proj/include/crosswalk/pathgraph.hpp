#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/mapping_set.hpp"

namespace crosswalk {

// An ordered, repetition-free chain of framework slugs.
struct SimplePath {
    std::vector<std::string> hops;

    auto operator<=>(const SimplePath&) const = default;

    std::string str() const;  // "a -> b -> c"
};

// Undirected framework-level graph. Nodes are endpoint slugs; parallel mapping
// sets between the same pair merge under one edge. Immutable after build.
class FrameworkGraph {
public:
    const std::vector<std::string>& nodes() const { return nodes_; }  // sorted
    bool has_node(std::string_view slug) const;

    // Sorted neighbor slugs; empty for unknown nodes.
    const std::vector<std::string>& neighbors(std::string_view slug) const;

    // Indices into the mapping-set list the graph was built from.
    const std::vector<std::size_t>& edge_sets(std::string_view a, std::string_view b) const;

    std::size_t edge_count() const { return edges_.size(); }

    friend FrameworkGraph build_graph(std::span<const MappingSet> mapping_sets);

private:
    std::vector<std::string> nodes_;
    std::map<std::string, std::vector<std::string>, std::less<>> adjacency_;
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> edges_;
};

// Rejects self-pair mapping sets (they are intra-framework data, not edges).
FrameworkGraph build_graph(std::span<const MappingSet> mapping_sets);

// All simple paths from source to target with at most `cutoff` nodes, in
// lexicographic hop order. Throws for unknown endpoints or source == target.
std::vector<SimplePath> enumerate_simple_paths(const FrameworkGraph& graph,
                                               std::string_view source, std::string_view target,
                                               std::size_t cutoff = 10);

// Drops every path whose node set strictly contains another path's node set.
// All inputs must share source and target. The result is the minimal antichain
// under node-set inclusion, in lexicographic hop order.
std::vector<SimplePath> prune_superset_paths(std::vector<SimplePath> paths);

}  // namespace crosswalk
