#include "crosswalk/universe.hpp"

#include <algorithm>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

void require_slug(const Catalog& catalog, std::string_view slug) {
    if (catalog.framework().slug != slug) {
        throw ValidationError("expected catalog '" + std::string(slug) + "', got '" +
                              catalog.framework().slug + "'");
    }
}

std::uint64_t tactic_memberships(const Catalog& attack, const CatalogItem& item) {
    std::uint64_t count = 0;
    if (item.level == ItemLevel::technique) {
        for (const ItemId& parent : item.parents) {
            const CatalogItem* p = attack.find(parent.local);
            if (p && p->level == ItemLevel::tactic) ++count;
        }
    } else if (item.level == ItemLevel::sub_technique) {
        for (const ItemId& parent : item.parents) {
            const CatalogItem* p = attack.find(parent.local);
            if (p && p->level == ItemLevel::technique) count += tactic_memberships(attack, *p);
        }
    }
    return count;
}

}  // namespace

PairUniverse item_pairs_universe(const Catalog& attack, const Catalog& psscrm,
                                 bool include_subtechniques) {
    require_slug(attack, kAttackSlug);
    require_slug(psscrm, kPsscrmSlug);

    std::vector<const CatalogItem*> techniques = attack.items_at(ItemLevel::technique);
    if (include_subtechniques) {
        for (const CatalogItem* sub : attack.items_at(ItemLevel::sub_technique)) {
            techniques.push_back(sub);
        }
    }
    std::sort(techniques.begin(), techniques.end(),
              [](const CatalogItem* a, const CatalogItem* b) { return a->id < b->id; });

    std::vector<const CatalogItem*> tasks = psscrm.items_at(ItemLevel::task);
    std::sort(tasks.begin(), tasks.end(),
              [](const CatalogItem* a, const CatalogItem* b) { return a->id < b->id; });

    PairUniverse universe;
    universe.task_count = tasks.size();
    for (const CatalogItem* technique : techniques) {
        universe.technique_tactic_memberships += tactic_memberships(attack, *technique);
    }
    universe.membership_pair_count = universe.technique_tactic_memberships * universe.task_count;

    universe.distinct_pairs.reserve(techniques.size() * tasks.size());
    for (const CatalogItem* technique : techniques) {
        for (const CatalogItem* task : tasks) {
            universe.distinct_pairs.emplace_back(technique->id, task->id);
        }
    }
    return universe;
}

}  // namespace crosswalk
