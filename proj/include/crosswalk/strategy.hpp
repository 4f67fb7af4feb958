#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crosswalk/ids.hpp"

namespace crosswalk {

// The four mapping strategies.
enum class StrategyTag {
    m1_transitive,
    m2_llm,
    m3_setmap,
    m4_report,
};

inline constexpr std::array<StrategyTag, 4> kAllStrategies = {
    StrategyTag::m1_transitive,
    StrategyTag::m2_llm,
    StrategyTag::m3_setmap,
    StrategyTag::m4_report,
};

// Stable string encodings: m1, m2, m3, m4.
std::string_view to_string(StrategyTag tag);
StrategyTag parse_strategy_tag(std::string_view text);

// One (technique, task) pair asserted by one strategy, with evidence.
//
// Evidence is a strategy-specific JSON object:
//   m1: {"path": [slugs...], "chain": [item locals...]}
//   m2: {"mode": ..., "prompt": ..., "response": ...}
//   m3: {"mitigations": [locals...]}
//   m4: {"report": ..., "kind": ..., "quote": ...}
struct CandidateMapping {
    ItemId technique;  // attack technique or sub-technique
    ItemId task;       // task-level psscrm id
    StrategyTag strategy = StrategyTag::m1_transitive;
    nlohmann::json evidence;

    bool operator==(const CandidateMapping&) const = default;
};

// Throws unless the technique/task patterns hold and evidence is a non-empty
// object.
void validate_candidate(const CandidateMapping& candidate);

// Candidate file: one record per line,
//   technique<TAB>task<TAB>strategy<TAB>evidence-json-blob
// '#' lines and blank lines are ignored on read.
void write_candidates(std::ostream& out, std::span<const CandidateMapping> candidates);
void write_candidates_file(const std::filesystem::path& path,
                           std::span<const CandidateMapping> candidates);
std::vector<CandidateMapping> parse_candidates(std::string_view text, const std::string& origin);
std::vector<CandidateMapping> read_candidates_file(const std::filesystem::path& path);

}  // namespace crosswalk
