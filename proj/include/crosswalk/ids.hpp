#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace crosswalk {

// The two frameworks the engine maps between use fixed slugs; every other
// framework in a corpus may pick any slug.
inline constexpr std::string_view kAttackSlug = "attack";
inline constexpr std::string_view kPsscrmSlug = "psscrm";

// Identity of one framework catalog.
struct FrameworkRef {
    std::string slug;     // short lowercase key, unique within a corpus, no whitespace
    std::string name;
    std::string version;

    bool operator==(const FrameworkRef&) const = default;
};

// Fully qualified item identifier: framework slug plus the id local to it.
struct ItemId {
    std::string framework;
    std::string local;

    auto operator<=>(const ItemId&) const = default;

    std::string str() const { return framework + ":" + local; }
};

enum class ItemLevel {
    tactic,
    technique,
    sub_technique,
    mitigation,
    group,
    practice,
    task,
    generic,
};

std::string_view to_string(ItemLevel level);

// Throws ValidationError for an unknown level token.
ItemLevel parse_item_level(std::string_view text);

// Hierarchy rank within a framework, smaller = higher. Levels that sit outside
// the parent/child ordering (mitigation, generic) have no rank.
std::optional<int> level_rank(ItemLevel level);

// attack local ids
bool is_attack_tactic_local(std::string_view local);        // TA0005
bool is_attack_technique_local(std::string_view local);     // T1552 or T1552.001
bool is_attack_subtechnique_local(std::string_view local);  // T1552.001 only
bool is_attack_mitigation_local(std::string_view local);    // M1045

// psscrm local ids are letter-dotted: G (group), G.1 (practice), G.1.3 (task).
// Returns the segment count, or 0 when malformed.
int psscrm_depth(std::string_view local);

// Level encoded by a local id, for frameworks whose id grammar pins one.
// nullopt when the id matches no pattern of that framework, or when the
// framework has no id grammar (anything other than attack/psscrm).
std::optional<ItemLevel> implied_level(std::string_view framework_slug, std::string_view local);

// Well-formedness of a local id within its framework. Catalog membership is a
// separate question.
bool is_valid_local(std::string_view framework_slug, std::string_view local);

// Parent technique local of a sub-technique id: T1552.001 -> T1552.
std::optional<std::string> parent_technique_local(std::string_view local);

// First segment of a psscrm id: P.5.2 -> P. Empty when malformed.
std::string_view psscrm_group_segment(std::string_view local);

// True for the (technique, task) shape every strategy emits: an attack
// technique or sub-technique paired with a task-level psscrm id.
bool is_candidate_technique(const ItemId& id);
bool is_candidate_task(const ItemId& id);

}  // namespace crosswalk
