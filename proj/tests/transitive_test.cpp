#include <doctest.h>

#include <random>

#include "crosswalk/errors.hpp"
#include "crosswalk/transitive.hpp"
#include "oracles.hpp"

using namespace crosswalk;

namespace {

MappingSet linked_set(const std::string& a, const std::string& b,
                      const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<Link> links;
    for (const auto& [left, right] : pairs) {
        links.push_back(Link{ItemId{a, left}, ItemId{b, right}});
    }
    return MappingSet({a, b}, Relationship::supportive, "unit", links);
}

SimplePath path_of(std::vector<std::string> hops) { return SimplePath{std::move(hops)}; }

}  // namespace

TEST_CASE("run_transitive composes the credential chain") {
    std::vector<MappingSet> sets{
        linked_set("attack", "nist80053", {{"T1552", "SA-15"}}),
        linked_set("nist80053", "ssdf", {{"SA-15", "PO.3.2"}}),
        linked_set("ssdf", "psscrm", {{"PO.3.2", "P.4.2"}}),
    };
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "nist80053", "ssdf", "psscrm"})};

    auto candidates = run_transitive(graph, paths, sets);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].technique == ItemId{"attack", "T1552"});
    CHECK(candidates[0].task == ItemId{"psscrm", "P.4.2"});
    CHECK(candidates[0].strategy == StrategyTag::m1_transitive);
    CHECK(candidates[0].evidence.at("chain") ==
          nlohmann::json({"T1552", "SA-15", "PO.3.2", "P.4.2"}));
    CHECK(candidates[0].evidence.at("path") ==
          nlohmann::json({"attack", "nist80053", "ssdf", "psscrm"}));
}

TEST_CASE("run_transitive: a hop with no links that touch the chain yields nothing") {
    std::vector<MappingSet> sets{
        linked_set("attack", "nist80053", {{"T1552", "SA-15"}}),
        linked_set("nist80053", "ssdf", {{"SA-11", "PO.3.2"}}),  // SA-15 never continues
        linked_set("ssdf", "psscrm", {{"PO.3.2", "P.4.2"}}),
    };
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "nist80053", "ssdf", "psscrm"})};
    CHECK(run_transitive(graph, paths, sets).empty());
}

TEST_CASE("run_transitive: paths must have mapping sets on every hop") {
    std::vector<MappingSet> sets{linked_set("attack", "nist80053", {{"T1552", "SA-15"}})};
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "nist80053", "ssdf"})};
    CHECK_THROWS_WITH_AS(run_transitive(graph, paths, sets), doctest::Contains("no mapping set"),
                         ValidationError);
}

TEST_CASE("run_transitive: start and end filters apply") {
    // tactics, mitigations and practice-level ids are valid link items but are
    // not candidate material
    std::vector<MappingSet> sets{
        linked_set("attack", "mid", {{"T1552", "x1"}, {"TA0001", "x1"}, {"M1045", "x2"}}),
        linked_set("mid", "psscrm", {{"x1", "P.4.2"}, {"x1", "P.4"}, {"x2", "P.1.2"}}),
    };
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "mid", "psscrm"})};

    auto candidates = run_transitive(graph, paths, sets);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].technique.local == "T1552");
    CHECK(candidates[0].task.local == "P.4.2");
}

TEST_CASE("run_transitive dedupes across paths, first witness wins") {
    std::vector<MappingSet> sets{
        linked_set("attack", "ma", {{"T1552", "a1"}}),
        linked_set("ma", "psscrm", {{"a1", "P.4.2"}}),
        linked_set("attack", "mb", {{"T1552", "b1"}}),
        linked_set("mb", "psscrm", {{"b1", "P.4.2"}}),
    };
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "ma", "psscrm"}),
                                  path_of({"attack", "mb", "psscrm"})};

    auto candidates = run_transitive(graph, paths, sets);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].evidence.at("chain") == nlohmann::json({"T1552", "a1", "P.4.2"}));
}

TEST_CASE("run_transitive: overflow guard trips") {
    std::vector<std::pair<std::string, std::string>> dense_a;
    std::vector<std::pair<std::string, std::string>> dense_b;
    for (int t = 0; t < 6; ++t) {
        for (int x = 0; x < 6; ++x) {
            dense_a.emplace_back("T10" + std::to_string(10 + t), "x" + std::to_string(x));
            dense_b.emplace_back("x" + std::to_string(t), "P.1." + std::to_string(x + 1));
        }
    }
    std::vector<MappingSet> sets{linked_set("attack", "mid", dense_a),
                                 linked_set("mid", "psscrm", dense_b)};
    FrameworkGraph graph = build_graph(sets);
    std::vector<SimplePath> paths{path_of({"attack", "mid", "psscrm"})};

    TransitiveOptions tight;
    tight.per_path_result_cap = 10;
    CHECK_THROWS_WITH_AS(run_transitive(graph, paths, sets, tight),
                         doctest::Contains("overflow"), ValidationError);
    CHECK(run_transitive(graph, paths, sets).size() == 36);
}

TEST_CASE("run_transitive matches the exhaustive chain oracle on random tables") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int hop_count = 1 + static_cast<int>(rng() % 3);  // 1..3 hops of links
        std::vector<std::string> slugs{"attack"};
        for (int i = 1; i < hop_count; ++i) slugs.push_back("mid" + std::to_string(i));
        slugs.push_back("psscrm");

        auto local_pool = [&](int level, int index) -> std::string {
            if (level == 0) {
                // mix techniques with tactic/mitigation noise
                switch (index % 5) {
                    case 4: return index % 2 ? "TA0001" : "M1000";
                    default: return "T100" + std::to_string(index % 4);
                }
            }
            if (level == hop_count) {
                return index % 4 == 3 ? "P.1" : "P.1." + std::to_string(index % 3 + 1);
            }
            return "x" + std::to_string(index % 4);
        };

        std::vector<std::vector<std::pair<std::string, std::string>>> hops(hop_count);
        std::vector<MappingSet> sets;
        for (int h = 0; h < hop_count; ++h) {
            int link_count = 1 + static_cast<int>(rng() % 8);
            std::set<std::pair<std::string, std::string>> links;
            for (int l = 0; l < link_count; ++l) {
                links.insert({local_pool(h, static_cast<int>(rng() % 10)),
                              local_pool(h + 1, static_cast<int>(rng() % 10))});
            }
            hops[h].assign(links.begin(), links.end());
            sets.push_back(linked_set(slugs[h], slugs[h + 1], hops[h]));
        }

        FrameworkGraph graph = build_graph(sets);
        std::vector<SimplePath> paths{SimplePath{slugs}};
        auto candidates = run_transitive(graph, paths, sets);

        std::set<std::pair<std::string, std::string>> got;
        for (const CandidateMapping& candidate : candidates) {
            got.insert({candidate.technique.local, candidate.task.local});
        }
        CHECK(got == oracles::chain_join(hops));

        // soundness: every evidence chain replays against the hop link tables
        for (const CandidateMapping& candidate : candidates) {
            auto chain = candidate.evidence.at("chain").get<std::vector<std::string>>();
            REQUIRE(chain.size() == static_cast<std::size_t>(hop_count) + 1);
            for (int h = 0; h < hop_count; ++h) {
                auto neighbors = sets[h].neighbors(ItemId{slugs[h], chain[h]});
                CHECK(std::find(neighbors.begin(), neighbors.end(),
                                ItemId{slugs[h + 1], chain[h + 1]}) != neighbors.end());
            }
        }
    }
}
