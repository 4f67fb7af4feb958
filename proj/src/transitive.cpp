#include "crosswalk/transitive.hpp"

#include <map>
#include <set>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

using HopLinks = std::map<std::string, std::set<std::string>>;

// Directed view of one hop's links: local in `from` -> locals in `to`.
HopLinks hop_links(const FrameworkGraph& graph, std::span<const MappingSet> mapping_sets,
                   const std::string& from, const std::string& to) {
    HopLinks out;
    for (std::size_t idx : graph.edge_sets(from, to)) {
        const MappingSet& set = mapping_sets[idx];
        bool forward = set.endpoints()[0] == from;
        for (const Link& link : set.links()) {
            const ItemId& a = forward ? link.a : link.b;
            const ItemId& b = forward ? link.b : link.a;
            out[a.local].insert(b.local);
        }
    }
    return out;
}

bool chain_start_ok(const std::string& local, const TransitiveOptions& options) {
    if (!is_attack_technique_local(local)) return false;
    return options.source_catalog == nullptr || options.source_catalog->find(local) != nullptr;
}

bool chain_end_ok(const std::string& local, const TransitiveOptions& options) {
    if (psscrm_depth(local) != 3) return false;
    return options.target_catalog == nullptr || options.target_catalog->find(local) != nullptr;
}

}  // namespace

std::vector<CandidateMapping> run_transitive(const FrameworkGraph& graph,
                                             std::span<const SimplePath> paths,
                                             std::span<const MappingSet> mapping_sets,
                                             const TransitiveOptions& options) {
    // (technique local, task local) -> evidence from the first witnessing path
    std::map<std::pair<std::string, std::string>, nlohmann::json> found;

    for (const SimplePath& path : paths) {
        if (path.hops.size() < 2) {
            throw ValidationError("transitive join needs paths with at least 2 hops");
        }
        for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
            if (graph.edge_sets(path.hops[i], path.hops[i + 1]).empty()) {
                throw ValidationError("path '" + path.str() + "' hop " + path.hops[i] + " -> " +
                                      path.hops[i + 1] + " has no mapping set");
            }
        }

        // (start local, current local) -> witnessing chain of locals
        std::map<std::pair<std::string, std::string>, std::vector<std::string>> frontier;
        HopLinks first_hop = hop_links(graph, mapping_sets, path.hops[0], path.hops[1]);
        for (const auto& [start, nexts] : first_hop) {
            if (!chain_start_ok(start, options)) continue;
            for (const std::string& next : nexts) {
                frontier.emplace(std::make_pair(start, next),
                                 std::vector<std::string>{start, next});
            }
        }

        for (std::size_t i = 1; i + 1 < path.hops.size() && !frontier.empty(); ++i) {
            if (frontier.size() > options.per_path_result_cap) {
                throw ValidationError("transitive join overflow on path '" + path.str() +
                                      "': more than " +
                                      std::to_string(options.per_path_result_cap) +
                                      " in-flight chains");
            }
            HopLinks hop = hop_links(graph, mapping_sets, path.hops[i], path.hops[i + 1]);
            std::map<std::pair<std::string, std::string>, std::vector<std::string>> next_frontier;
            for (const auto& [key, chain] : frontier) {
                auto it = hop.find(key.second);
                if (it == hop.end()) continue;
                for (const std::string& next : it->second) {
                    auto next_key = std::make_pair(key.first, next);
                    if (next_frontier.contains(next_key)) continue;
                    std::vector<std::string> next_chain = chain;
                    next_chain.push_back(next);
                    next_frontier.emplace(std::move(next_key), std::move(next_chain));
                }
            }
            frontier = std::move(next_frontier);
        }
        if (frontier.size() > options.per_path_result_cap) {
            throw ValidationError("transitive join overflow on path '" + path.str() +
                                  "': more than " +
                                  std::to_string(options.per_path_result_cap) +
                                  " in-flight chains");
        }

        for (const auto& [key, chain] : frontier) {
            if (!chain_end_ok(key.second, options)) continue;
            if (found.contains(key)) continue;
            found.emplace(key, nlohmann::json{{"path", path.hops}, {"chain", chain}});
        }
    }

    std::vector<CandidateMapping> out;
    out.reserve(found.size());
    for (auto& [key, evidence] : found) {
        out.push_back(CandidateMapping{ItemId{std::string(kAttackSlug), key.first},
                                       ItemId{std::string(kPsscrmSlug), key.second},
                                       StrategyTag::m1_transitive, std::move(evidence)});
    }
    return out;
}

}  // namespace crosswalk
