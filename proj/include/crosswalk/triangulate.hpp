#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crosswalk/strategy.hpp"

namespace crosswalk {

// A deduplicated (technique, task) pair with the strategies asserting it and
// their evidence.
struct TriangulatedMapping {
    ItemId technique;
    ItemId task;
    std::set<StrategyTag> strategies;
    std::map<StrategyTag, std::vector<nlohmann::json>> evidence;

    int consensus_count() const { return static_cast<int>(strategies.size()); }
    bool all_four() const { return strategies.size() == kAllStrategies.size(); }

    bool operator==(const TriangulatedMapping&) const = default;
};

// One record per distinct (technique, task), sorted; strategies are the union
// of tags asserting the pair, evidence preserved per strategy in input order.
std::vector<TriangulatedMapping> dedupe(std::span<const CandidateMapping> candidates);

enum class UniverseMode { union_of_candidates, full_cross_product };

std::string_view to_string(UniverseMode mode);
UniverseMode parse_universe_mode(std::string_view text);

// Units x the four strategy coders. Cells are 0/1 (missing = -1 is accepted by
// the alpha computation but never produced here: strategies are total binary
// coders over the chosen universe).
struct AgreementMatrix {
    std::vector<std::pair<ItemId, ItemId>> units;        // sorted pairs
    std::vector<std::array<std::int8_t, 4>> cells;       // column i = kAllStrategies[i]
};

// union_of_candidates: units are the deduplicated pairs themselves.
// full_cross_product: units are the supplied universe; every deduplicated pair
// must be inside it.
AgreementMatrix build_agreement_matrix(std::span<const TriangulatedMapping> unique,
                                       UniverseMode mode,
                                       std::span<const std::pair<ItemId, ItemId>> universe = {});

// Krippendorff's alpha, nominal metric, via the coincidence-matrix
// formulation: alpha = 1 - Do/De over pairable values, with missing cells
// handled by the 1/(m_u - 1) pairable weighting. Throws ValidationError
// "alpha undefined: single category" when expected disagreement is zero;
// never returns NaN.
//
// The generic overload takes one row per unit, one entry per coder; negative
// values mark missing cells. Rows may differ in length.
double krippendorff_alpha(std::span<const std::vector<int>> rows);
double krippendorff_alpha(const AgreementMatrix& matrix);

// Percent agreement for each coder pair over units where both coded,
// keyed "m1:m2" etc. Pairs with no jointly coded unit are omitted.
std::map<std::string, double> pairwise_agreement(const AgreementMatrix& matrix);

// Keeps records asserted by at least `threshold` strategies, ordered by
// (technique, task). threshold must be in [1, 4].
std::vector<TriangulatedMapping> filter_by_consensus(
    std::span<const TriangulatedMapping> unique, int threshold);

// Where a mapping file came from: catalog versions plus a digest of the inputs
// and run configuration.
struct Provenance {
    std::vector<std::pair<std::string, std::string>> corpus_versions;  // slug, version
    std::string digest;
    std::string universe_mode;

    bool operator==(const Provenance&) const = default;
};

// Triangulated-mapping file: '#' header lines carry provenance, then one
// record per line:
//   technique<TAB>task<TAB>strategies-csv<TAB>evidence-json-object
void write_triangulated(std::ostream& out, std::span<const TriangulatedMapping> mappings,
                        const Provenance& provenance);
void write_triangulated_file(const std::filesystem::path& path,
                             std::span<const TriangulatedMapping> mappings,
                             const Provenance& provenance);
struct TriangulatedFile {
    std::vector<TriangulatedMapping> mappings;
    Provenance provenance;
};
TriangulatedFile read_triangulated_file(const std::filesystem::path& path);
TriangulatedFile parse_triangulated(std::string_view text, const std::string& origin);

// alpha.json payload.
struct AlphaReport {
    std::optional<double> alpha;          // empty when undefined
    std::string error;                    // reason when undefined
    UniverseMode universe_mode = UniverseMode::full_cross_product;
    std::size_t unit_count = 0;
    std::map<std::string, std::size_t> per_strategy_counts;
    std::map<std::string, double> pairwise;
};

nlohmann::json alpha_report_json(const AlphaReport& report);
void write_alpha_json(const std::filesystem::path& path, const AlphaReport& report);

}  // namespace crosswalk
