#include "crosswalk/ids.hpp"

#include <algorithm>
#include <cctype>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool all_upper_alpha(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isupper(c) != 0; });
}

bool digits_after_prefix(std::string_view local, std::string_view prefix, std::size_t count) {
    return local.size() == prefix.size() + count && local.starts_with(prefix) &&
           all_digits(local.substr(prefix.size()));
}

}  // namespace

std::string_view to_string(ItemLevel level) {
    switch (level) {
        case ItemLevel::tactic: return "tactic";
        case ItemLevel::technique: return "technique";
        case ItemLevel::sub_technique: return "sub-technique";
        case ItemLevel::mitigation: return "mitigation";
        case ItemLevel::group: return "group";
        case ItemLevel::practice: return "practice";
        case ItemLevel::task: return "task";
        case ItemLevel::generic: return "generic";
    }
    return "generic";
}

ItemLevel parse_item_level(std::string_view text) {
    for (ItemLevel level : {ItemLevel::tactic, ItemLevel::technique, ItemLevel::sub_technique,
                            ItemLevel::mitigation, ItemLevel::group, ItemLevel::practice,
                            ItemLevel::task, ItemLevel::generic}) {
        if (text == to_string(level)) return level;
    }
    if (text == "sub_technique") return ItemLevel::sub_technique;
    throw ValidationError("unknown item level '" + std::string(text) + "'");
}

std::optional<int> level_rank(ItemLevel level) {
    switch (level) {
        case ItemLevel::tactic: return 0;
        case ItemLevel::technique: return 1;
        case ItemLevel::sub_technique: return 2;
        case ItemLevel::group: return 0;
        case ItemLevel::practice: return 1;
        case ItemLevel::task: return 2;
        case ItemLevel::mitigation:
        case ItemLevel::generic: return std::nullopt;
    }
    return std::nullopt;
}

bool is_attack_tactic_local(std::string_view local) {
    return digits_after_prefix(local, "TA", 4);
}

bool is_attack_technique_local(std::string_view local) {
    if (digits_after_prefix(local, "T", 4)) return true;
    return is_attack_subtechnique_local(local);
}

bool is_attack_subtechnique_local(std::string_view local) {
    // T1552.001
    if (local.size() != 9 || local[5] != '.') return false;
    return digits_after_prefix(local.substr(0, 5), "T", 4) && all_digits(local.substr(6));
}

bool is_attack_mitigation_local(std::string_view local) {
    return digits_after_prefix(local, "M", 4);
}

int psscrm_depth(std::string_view local) {
    int depth = 0;
    std::size_t start = 0;
    while (start <= local.size()) {
        std::size_t dot = local.find('.', start);
        std::string_view segment =
            dot == std::string_view::npos ? local.substr(start) : local.substr(start, dot - start);
        if (depth == 0) {
            if (!all_upper_alpha(segment)) return 0;
        } else {
            if (!all_digits(segment)) return 0;
        }
        ++depth;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return depth <= 3 ? depth : 0;
}

std::optional<ItemLevel> implied_level(std::string_view framework_slug, std::string_view local) {
    if (framework_slug == kAttackSlug) {
        if (is_attack_tactic_local(local)) return ItemLevel::tactic;
        if (is_attack_subtechnique_local(local)) return ItemLevel::sub_technique;
        if (is_attack_technique_local(local)) return ItemLevel::technique;
        if (is_attack_mitigation_local(local)) return ItemLevel::mitigation;
        return std::nullopt;
    }
    if (framework_slug == kPsscrmSlug) {
        switch (psscrm_depth(local)) {
            case 1: return ItemLevel::group;
            case 2: return ItemLevel::practice;
            case 3: return ItemLevel::task;
            default: return std::nullopt;
        }
    }
    return std::nullopt;
}

bool is_valid_local(std::string_view framework_slug, std::string_view local) {
    if (framework_slug == kAttackSlug || framework_slug == kPsscrmSlug) {
        return implied_level(framework_slug, local).has_value();
    }
    if (local.empty()) return false;
    return std::none_of(local.begin(), local.end(),
                        [](unsigned char c) { return std::isspace(c) != 0; });
}

std::optional<std::string> parent_technique_local(std::string_view local) {
    if (!is_attack_subtechnique_local(local)) return std::nullopt;
    return std::string(local.substr(0, local.find('.')));
}

std::string_view psscrm_group_segment(std::string_view local) {
    if (psscrm_depth(local) == 0) return {};
    std::size_t dot = local.find('.');
    return dot == std::string_view::npos ? local : local.substr(0, dot);
}

bool is_candidate_technique(const ItemId& id) {
    return id.framework == kAttackSlug && is_attack_technique_local(id.local);
}

bool is_candidate_task(const ItemId& id) {
    return id.framework == kPsscrmSlug && psscrm_depth(id.local) == 3;
}

}  // namespace crosswalk
