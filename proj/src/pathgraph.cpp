#include "crosswalk/pathgraph.hpp"

#include <algorithm>
#include <set>

#include "crosswalk/errors.hpp"

namespace crosswalk {

std::string SimplePath::str() const {
    std::string out;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        if (i > 0) out += " -> ";
        out += hops[i];
    }
    return out;
}

bool FrameworkGraph::has_node(std::string_view slug) const {
    return adjacency_.find(slug) != adjacency_.end();
}

const std::vector<std::string>& FrameworkGraph::neighbors(std::string_view slug) const {
    static const std::vector<std::string> kEmpty;
    auto it = adjacency_.find(slug);
    return it == adjacency_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& FrameworkGraph::edge_sets(std::string_view a,
                                                          std::string_view b) const {
    static const std::vector<std::size_t> kEmpty;
    std::pair<std::string, std::string> key{std::string(a), std::string(b)};
    if (key.second < key.first) std::swap(key.first, key.second);
    auto it = edges_.find(key);
    return it == edges_.end() ? kEmpty : it->second;
}

FrameworkGraph build_graph(std::span<const MappingSet> mapping_sets) {
    FrameworkGraph graph;
    for (std::size_t i = 0; i < mapping_sets.size(); ++i) {
        const MappingSet& set = mapping_sets[i];
        if (set.self_pair()) {
            throw ValidationError("self-loop mapping set " + set.endpoints()[0] + " <-> " +
                                  set.endpoints()[1] + " rejected as a graph edge");
        }
        const auto& [a, b] = set.endpoints();
        graph.edges_[{a, b}].push_back(i);
        graph.adjacency_[a];
        graph.adjacency_[b];
    }
    for (const auto& [pair, sets] : graph.edges_) {
        graph.adjacency_[pair.first].push_back(pair.second);
        graph.adjacency_[pair.second].push_back(pair.first);
    }
    for (auto& [slug, neighbors] : graph.adjacency_) {
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
        graph.nodes_.push_back(slug);
    }
    return graph;
}

namespace {

void extend_paths(const FrameworkGraph& graph, const std::string& target, std::size_t cutoff,
                  std::vector<std::string>& current, std::set<std::string_view>& visited,
                  std::vector<SimplePath>& out) {
    const std::string& here = current.back();
    if (here == target) {
        out.push_back(SimplePath{current});
        return;
    }
    if (current.size() == cutoff) return;
    for (const std::string& next : graph.neighbors(here)) {
        if (visited.contains(next)) continue;
        visited.insert(next);
        current.push_back(next);
        extend_paths(graph, target, cutoff, current, visited, out);
        current.pop_back();
        visited.erase(next);
    }
}

}  // namespace

std::vector<SimplePath> enumerate_simple_paths(const FrameworkGraph& graph,
                                               std::string_view source, std::string_view target,
                                               std::size_t cutoff) {
    if (!graph.has_node(source)) {
        throw ValidationError("unknown source framework '" + std::string(source) + "'");
    }
    if (!graph.has_node(target)) {
        throw ValidationError("unknown target framework '" + std::string(target) + "'");
    }
    if (source == target) {
        throw ValidationError("source and target framework must differ");
    }

    std::vector<SimplePath> out;
    if (cutoff < 2) return out;
    std::vector<std::string> current{std::string(source)};
    std::set<std::string_view> visited{source};
    extend_paths(graph, std::string(target), cutoff, current, visited, out);
    // DFS over sorted neighbors already yields lexicographic order; sort anyway
    // so the contract holds independently of the traversal.
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SimplePath> prune_superset_paths(std::vector<SimplePath> paths) {
    for (const SimplePath& path : paths) {
        if (path.hops.size() < 2) {
            throw ValidationError("path with fewer than 2 hops cannot be pruned");
        }
        if (path.hops.front() != paths.front().hops.front() ||
            path.hops.back() != paths.front().hops.back()) {
            throw ValidationError("prune requires all paths to share source and target");
        }
    }

    std::vector<std::set<std::string>> node_sets;
    node_sets.reserve(paths.size());
    for (const SimplePath& path : paths) {
        node_sets.emplace_back(path.hops.begin(), path.hops.end());
    }

    // Shortest-first: a retained set can only ever be a subset of later,
    // larger ones, so one pass yields the minimal antichain.
    std::vector<std::size_t> order(paths.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (node_sets[a].size() != node_sets[b].size())
            return node_sets[a].size() < node_sets[b].size();
        return paths[a] < paths[b];
    });

    std::vector<std::size_t> retained;
    for (std::size_t idx : order) {
        bool dominated = std::any_of(retained.begin(), retained.end(), [&](std::size_t kept) {
            return node_sets[kept].size() < node_sets[idx].size() &&
                   std::includes(node_sets[idx].begin(), node_sets[idx].end(),
                                 node_sets[kept].begin(), node_sets[kept].end());
        });
        if (!dominated) retained.push_back(idx);
    }

    std::vector<SimplePath> out;
    out.reserve(retained.size());
    for (std::size_t idx : retained) out.push_back(std::move(paths[idx]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace crosswalk
