#include <doctest.h>

#include <cmath>
#include <random>

#include "crosswalk/errors.hpp"
#include "crosswalk/triangulate.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace crosswalk;

namespace {

CandidateMapping candidate(const std::string& technique, const std::string& task,
                           StrategyTag tag) {
    return CandidateMapping{ItemId{"attack", technique}, ItemId{"psscrm", task}, tag,
                            nlohmann::json{{"note", std::string(to_string(tag))}}};
}

std::pair<ItemId, ItemId> pair_of(const std::string& technique, const std::string& task) {
    return {ItemId{"attack", technique}, ItemId{"psscrm", task}};
}

}  // namespace

TEST_CASE("dedupe unions strategies and keeps evidence per strategy") {
    std::vector<CandidateMapping> candidates{
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m2_llm),
    };
    auto unique = dedupe(candidates);
    REQUIRE(unique.size() == 1);
    CHECK(unique[0].strategies ==
          std::set<StrategyTag>{StrategyTag::m1_transitive, StrategyTag::m2_llm});
    CHECK(unique[0].consensus_count() == 2);
    CHECK_FALSE(unique[0].all_four());
    CHECK(unique[0].evidence.at(StrategyTag::m1_transitive).size() == 2);
    CHECK(unique[0].evidence.at(StrategyTag::m2_llm).size() == 1);
}

TEST_CASE("dedupe equals the nested-loop group-by on random candidates") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<CandidateMapping> candidates;
        int n = 1 + rng() % 12;
        for (int i = 0; i < n; ++i) {
            candidates.push_back(candidate("T100" + std::to_string(rng() % 3),
                                           "P.1." + std::to_string(1 + rng() % 3),
                                           kAllStrategies[rng() % 4]));
        }
        auto unique = dedupe(candidates);
        auto expected = oracles::group_candidates(candidates);
        REQUIRE(unique.size() == expected.size());
        for (std::size_t i = 0; i < unique.size(); ++i) {
            CHECK(unique[i].technique == std::get<0>(expected[i]));
            CHECK(unique[i].task == std::get<1>(expected[i]));
            CHECK(unique[i].strategies == std::get<2>(expected[i]));
        }

        // no pair gains a tag it was never given
        for (const TriangulatedMapping& mapping : unique) {
            for (StrategyTag tag : mapping.strategies) {
                bool asserted = false;
                for (const CandidateMapping& c : candidates) {
                    asserted |= c.technique == mapping.technique && c.task == mapping.task &&
                                c.strategy == tag;
                }
                CHECK(asserted);
            }
        }
    }
}

TEST_CASE("build_agreement_matrix in both universe modes") {
    std::vector<CandidateMapping> candidates{
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m2_llm),
        candidate("T1036", "G.1.3", StrategyTag::m3_setmap),
    };
    auto unique = dedupe(candidates);

    SUBCASE("union of candidates") {
        AgreementMatrix matrix = build_agreement_matrix(unique, UniverseMode::union_of_candidates);
        REQUIRE(matrix.units.size() == 1);
        CHECK(matrix.cells[0] == std::array<std::int8_t, 4>{1, 1, 1, 0});
    }
    SUBCASE("full cross product pads with zero rows") {
        std::vector<std::pair<ItemId, ItemId>> universe{
            pair_of("T1036", "G.1.3"), pair_of("T1036", "P.1.2"), pair_of("T1078", "G.1.3"),
            pair_of("T1078", "P.1.2")};
        std::vector<CandidateMapping> all_four_candidates = candidates;
        all_four_candidates.push_back(candidate("T1036", "G.1.3", StrategyTag::m4_report));
        AgreementMatrix matrix = build_agreement_matrix(dedupe(all_four_candidates),
                                                        UniverseMode::full_cross_product,
                                                        universe);
        REQUIRE(matrix.units.size() == 4);
        CHECK(matrix.cells[0] == std::array<std::int8_t, 4>{1, 1, 1, 1});
        for (std::size_t i = 1; i < 4; ++i) {
            CHECK(matrix.cells[i] == std::array<std::int8_t, 4>{0, 0, 0, 0});
        }
    }
    SUBCASE("full mode requires a universe containing every pair") {
        CHECK_THROWS_AS(build_agreement_matrix(unique, UniverseMode::full_cross_product),
                        ValidationError);
        std::vector<std::pair<ItemId, ItemId>> universe{pair_of("T1078", "P.1.2")};
        CHECK_THROWS_WITH_AS(
            build_agreement_matrix(unique, UniverseMode::full_cross_product, universe),
            doctest::Contains("outside the universe"), ValidationError);
    }
    SUBCASE("random candidate sets match a direct membership test") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<CandidateMapping> random_candidates;
            int n = 1 + rng() % 10;
            for (int i = 0; i < n; ++i) {
                random_candidates.push_back(candidate("T100" + std::to_string(rng() % 3),
                                                      "P.1." + std::to_string(1 + rng() % 3),
                                                      kAllStrategies[rng() % 4]));
            }
            auto grouped = dedupe(random_candidates);
            AgreementMatrix matrix =
                build_agreement_matrix(grouped, UniverseMode::union_of_candidates);
            for (std::size_t row = 0; row < matrix.units.size(); ++row) {
                for (std::size_t col = 0; col < kAllStrategies.size(); ++col) {
                    bool member = false;
                    for (const CandidateMapping& c : random_candidates) {
                        member |= std::make_pair(c.technique, c.task) == matrix.units[row] &&
                                  c.strategy == kAllStrategies[col];
                    }
                    CHECK(matrix.cells[row][col] == (member ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("krippendorff_alpha: frozen values and defined errors") {
    SUBCASE("perfect agreement with both categories present is exactly 1.0") {
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < 10; ++i) {
            rows.push_back(std::vector<int>(4, i < 5 ? 1 : 0));
        }
        CHECK(krippendorff_alpha(rows) == 1.0);
    }
    SUBCASE("two coders, four units, hand-computed coincidence value") {
        std::vector<std::vector<int>> rows{{1, 1}, {0, 0}, {1, 0}, {0, 1}};
        CHECK(krippendorff_alpha(rows) == doctest::Approx(0.125).epsilon(1e-12));
    }
    SUBCASE("single category raises the defined error") {
        std::vector<std::vector<int>> rows{{1, 1}, {1, 1}};
        CHECK_THROWS_WITH_AS(krippendorff_alpha(rows),
                             doctest::Contains("alpha undefined: single category"),
                             ValidationError);
    }
    SUBCASE("degenerate shapes are validation errors, never NaN") {
        CHECK_THROWS_AS(krippendorff_alpha(std::vector<std::vector<int>>{{1, 0}}),
                        ValidationError);
        std::vector<std::vector<int>> unpairable{{1, -1, -1}, {0, -1, -1}};
        CHECK_THROWS_AS(krippendorff_alpha(unpairable), ValidationError);
    }
}

TEST_CASE("krippendorff_alpha invariances") {
    std::vector<std::vector<int>> rows{{1, 1, 0, -1}, {0, 0, 0, 0}, {1, 0, 1, 1},
                                       {0, 1, -1, 1}, {1, 1, 1, 1}};
    double base = krippendorff_alpha(rows);

    SUBCASE("swapping the labels 0 and 1 changes nothing") {
        std::vector<std::vector<int>> swapped = rows;
        for (auto& row : swapped) {
            for (int& value : row) {
                if (value >= 0) value = 1 - value;
            }
        }
        CHECK(krippendorff_alpha(swapped) == doctest::Approx(base).epsilon(1e-12));
    }
    SUBCASE("permuting coder columns changes nothing") {
        std::vector<std::vector<int>> permuted;
        for (const auto& row : rows) {
            permuted.push_back({row[3], row[0], row[2], row[1]});
        }
        CHECK(krippendorff_alpha(permuted) == doctest::Approx(base).epsilon(1e-12));
    }
    SUBCASE("permuting unit rows changes nothing") {
        std::vector<std::vector<int>> shuffled{rows[4], rows[2], rows[0], rows[3], rows[1]};
        CHECK(krippendorff_alpha(shuffled) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("krippendorff_alpha reproduces the published 4-coder reliability example") {
    // classic 12-unit nominal example with missing cells; reported value 0.743
    std::vector<std::vector<int>> rows{
        {1, 1, -1, 1}, {2, 2, 3, 2},   {3, 3, 3, 3},  {3, 3, 3, 3},
        {2, 2, 2, 2},  {1, 2, 3, 4},   {4, 4, 4, 4},  {1, 1, 2, 1},
        {2, 2, 2, 2},  {-1, 5, 5, 5},  {-1, -1, 1, 1}, {-1, 3, -1, -1},
    };
    CHECK(krippendorff_alpha(rows) == doctest::Approx(0.743421052631579).epsilon(1e-9));
}

TEST_CASE("krippendorff_alpha honors the two-coder relation to Scott's pi") {
    // for two coders and no missing cells: alpha = ((n - 1) * pi + 1) / n
    std::mt19937_64 rng(808);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t units = 2 + rng() % 10;
        std::vector<std::vector<int>> rows(units, std::vector<int>(2, 0));
        for (auto& row : rows) {
            row[0] = static_cast<int>(rng() % 2);
            row[1] = static_cast<int>(rng() % 2);
        }

        double n = 2.0 * static_cast<double>(units);
        double disagreeing = 0;
        std::array<double, 2> pooled{0, 0};
        for (const auto& row : rows) {
            if (row[0] != row[1]) disagreeing += 1;
            pooled[row[0]] += 1;
            pooled[row[1]] += 1;
        }
        double observed = disagreeing / static_cast<double>(units);
        double expected =
            1.0 - (pooled[0] / n) * (pooled[0] / n) - (pooled[1] / n) * (pooled[1] / n);
        if (expected == 0) {
            CHECK_THROWS_AS(krippendorff_alpha(rows), ValidationError);
            continue;
        }
        double pi = 1.0 - observed / expected;
        CHECK(krippendorff_alpha(rows) ==
              doctest::Approx(((n - 1.0) * pi + 1.0) / n).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("krippendorff_alpha matches the direct-definition oracle") {
    std::mt19937_64 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t units = 2 + rng() % 5;   // 2..6
        std::size_t coders = 2 + rng() % 3;  // 2..4
        bool with_missing = trial % 3 == 0;
        bool with_zero_rows = trial % 2 == 0;

        std::vector<std::vector<int>> rows(units, std::vector<int>(coders, 0));
        for (auto& row : rows) {
            for (int& value : row) {
                if (with_missing && rng() % 4 == 0) {
                    value = -1;
                } else {
                    value = static_cast<int>(rng() % 2);
                }
            }
        }
        if (with_zero_rows) {
            for (int& value : rows[rng() % units]) value = 0;
        }

        auto expected = oracles::alpha_direct(rows);
        if (!expected || rows.size() < 2) {
            CHECK_THROWS_AS(krippendorff_alpha(rows), ValidationError);
            continue;
        }
        double got = krippendorff_alpha(rows);
        CHECK(std::abs(got - *expected) <= 1e-9);
        CHECK(got <= 1.0 + 1e-12);
        ++checked;
    }
    CHECK(checked > 100);  // the generator must exercise the defined case often
}

TEST_CASE("filter_by_consensus") {
    std::vector<CandidateMapping> candidates{
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m2_llm),
        candidate("T1036", "G.1.3", StrategyTag::m3_setmap),
        candidate("T1078", "P.1.2", StrategyTag::m1_transitive),
        candidate("T1078", "P.1.2", StrategyTag::m4_report),
        candidate("T1190", "E.3.2", StrategyTag::m1_transitive),
        candidate("T1190", "E.3.2", StrategyTag::m2_llm),
        candidate("T1190", "E.3.2", StrategyTag::m3_setmap),
        candidate("T1190", "E.3.2", StrategyTag::m4_report),
    };
    auto unique = dedupe(candidates);

    SUBCASE("three-strategy pairs survive k=3, two-strategy pairs do not") {
        auto filtered = filter_by_consensus(unique, 3);
        REQUIRE(filtered.size() == 2);
        CHECK(filtered[0].technique.local == "T1036");
        CHECK_FALSE(filtered[0].all_four());
        CHECK(filtered[1].technique.local == "T1190");
        CHECK(filtered[1].all_four());
    }
    SUBCASE("every threshold's output contains the next threshold's output") {
        for (int k = 1; k < 4; ++k) {
            auto wider = filter_by_consensus(unique, k);
            auto narrower = filter_by_consensus(unique, k + 1);
            for (const TriangulatedMapping& mapping : narrower) {
                CHECK(std::find(wider.begin(), wider.end(), mapping) != wider.end());
            }
        }
    }
    SUBCASE("threshold bounds") {
        CHECK_THROWS_AS(filter_by_consensus(unique, 0), ValidationError);
        CHECK_THROWS_AS(filter_by_consensus(unique, 5), ValidationError);
    }
}

TEST_CASE("triangulated file round-trip preserves mappings and provenance") {
    std::vector<CandidateMapping> candidates{
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m2_llm),
        candidate("T1553.004", "P.3.3", StrategyTag::m3_setmap),
    };
    auto unique = dedupe(candidates);
    Provenance provenance;
    provenance.corpus_versions = {{"attack", "v16.1"}, {"psscrm", "v1.01"}};
    provenance.digest = "00ff00ff00ff00ff";
    provenance.universe_mode = "full_cross_product";

    testutil::TempDir dir("triangulated");
    auto path = dir.path() / "unique.tsv";
    write_triangulated_file(path, unique, provenance);
    TriangulatedFile reloaded = read_triangulated_file(path);

    CHECK(reloaded.provenance == provenance);
    REQUIRE(reloaded.mappings.size() == unique.size());
    CHECK(reloaded.mappings == std::vector<TriangulatedMapping>(unique.begin(), unique.end()));
}

TEST_CASE("pairwise agreement diagnostics") {
    std::vector<CandidateMapping> candidates{
        candidate("T1036", "G.1.3", StrategyTag::m1_transitive),
        candidate("T1036", "G.1.3", StrategyTag::m2_llm),
        candidate("T1078", "P.1.2", StrategyTag::m1_transitive),
    };
    AgreementMatrix matrix =
        build_agreement_matrix(dedupe(candidates), UniverseMode::union_of_candidates);
    auto rates = pairwise_agreement(matrix);
    CHECK(rates.size() == 6);
    CHECK(rates.at("m1:m2") == doctest::Approx(0.5));  // agree on one of two units
    CHECK(rates.at("m3:m4") == doctest::Approx(1.0));  // both coded 0 everywhere
}
