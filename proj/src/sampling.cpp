#include "crosswalk/sampling.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

// tactic local -> sorted technique locals under it
std::map<std::string, std::vector<std::string>> techniques_by_tactic(const Catalog& attack,
                                                                     bool include_subtechniques) {
    std::map<std::string, std::vector<std::string>> out;
    for (const CatalogItem* tactic : attack.items_at(ItemLevel::tactic)) {
        out[tactic->id.local];
    }
    auto add_memberships = [&](const CatalogItem& item, const CatalogItem& technique) {
        for (const ItemId& parent : technique.parents) {
            const CatalogItem* p = attack.find(parent.local);
            if (p && p->level == ItemLevel::tactic) out[p->id.local].push_back(item.id.local);
        }
    };
    for (const CatalogItem& item : attack.items()) {
        if (item.level == ItemLevel::technique) {
            add_memberships(item, item);
        } else if (include_subtechniques && item.level == ItemLevel::sub_technique) {
            for (const ItemId& parent : item.parents) {
                const CatalogItem* technique = attack.find(parent.local);
                if (technique && technique->level == ItemLevel::technique) {
                    add_memberships(item, *technique);
                }
            }
        }
    }
    for (auto& [tactic, techniques] : out) {
        std::sort(techniques.begin(), techniques.end());
        techniques.erase(std::unique(techniques.begin(), techniques.end()), techniques.end());
    }
    return out;
}

// group local -> sorted task locals whose id sits under the group
std::map<std::string, std::vector<std::string>> tasks_by_group(const Catalog& psscrm) {
    std::map<std::string, std::vector<std::string>> out;
    for (const CatalogItem* group : psscrm.items_at(ItemLevel::group)) {
        out[group->id.local];
    }
    for (const CatalogItem* task : psscrm.items_at(ItemLevel::task)) {
        std::string group(psscrm_group_segment(task->id.local));
        auto it = out.find(group);
        if (it != out.end()) it->second.push_back(task->id.local);
    }
    for (auto& [group, tasks] : out) std::sort(tasks.begin(), tasks.end());
    return out;
}

}  // namespace

std::vector<Stratum> build_strata(const Catalog& attack, const Catalog& psscrm,
                                  bool include_subtechniques) {
    auto techniques = techniques_by_tactic(attack, include_subtechniques);
    auto tasks = tasks_by_group(psscrm);

    std::vector<Stratum> strata;
    for (const auto& [tactic, tactic_techniques] : techniques) {
        for (const auto& [group, group_tasks] : tasks) {
            std::uint64_t count =
                static_cast<std::uint64_t>(tactic_techniques.size()) * group_tasks.size();
            if (count == 0) continue;
            strata.push_back(Stratum{ItemId{std::string(kAttackSlug), tactic},
                                     ItemId{std::string(kPsscrmSlug), group}, count, 0});
        }
    }
    return strata;
}

std::vector<Stratum> allocate_sample(std::vector<Stratum> strata, std::uint64_t n) {
    if (n < 1) throw ValidationError("sample size must be at least 1");
    if (strata.empty()) throw ValidationError("cannot allocate over zero strata");

    std::uint64_t total = 0;
    for (const Stratum& stratum : strata) {
        if (stratum.pair_count == 0) {
            throw ValidationError("stratum (" + stratum.tactic.local + ", " +
                                  stratum.group.local + ") has zero pairings");
        }
        total += stratum.pair_count;
    }
    for (Stratum& stratum : strata) {
        // ceil(pair_count * n / total) in exact integer arithmetic
        stratum.allocation = (stratum.pair_count * n + total - 1) / total;
    }
    return strata;
}

std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw ValidationError("bounded_uniform needs a positive bound");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t threshold = max - max % n;  // largest multiple of n
    for (;;) {
        std::uint64_t value = rng();
        if (value < threshold) return value % n;
    }
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view a, std::string_view b) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_byte = [&](unsigned char byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(seed >> (8 * i)));
    for (char c : a) mix_byte(static_cast<unsigned char>(c));
    mix_byte(0x1f);  // separator so (ab, c) != (a, bc)
    for (char c : b) mix_byte(static_cast<unsigned char>(c));

    // splitmix64 finalizer
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

SampleDraw draw_sample(const std::vector<Stratum>& strata, const Catalog& attack,
                       const Catalog& psscrm, std::uint64_t seed, bool include_subtechniques) {
    auto techniques = techniques_by_tactic(attack, include_subtechniques);
    auto tasks = tasks_by_group(psscrm);

    SampleDraw draw;
    for (const Stratum& stratum : strata) {
        auto tech_it = techniques.find(stratum.tactic.local);
        auto task_it = tasks.find(stratum.group.local);
        if (tech_it == techniques.end() || task_it == tasks.end()) {
            throw ValidationError("stratum (" + stratum.tactic.local + ", " +
                                  stratum.group.local + ") does not match the catalogs");
        }
        const auto& stratum_techniques = tech_it->second;
        const auto& stratum_tasks = task_it->second;
        std::uint64_t size =
            static_cast<std::uint64_t>(stratum_techniques.size()) * stratum_tasks.size();
        if (size != stratum.pair_count) {
            throw ValidationError("stratum (" + stratum.tactic.local + ", " +
                                  stratum.group.local + ") pair count " +
                                  std::to_string(stratum.pair_count) +
                                  " does not match the catalogs (" + std::to_string(size) + ")");
        }

        std::uint64_t quota = stratum.allocation;
        if (quota > size) {
            draw.warnings.push_back("stratum (" + stratum.tactic.local + ", " +
                                    stratum.group.local + ") allocation " +
                                    std::to_string(quota) + " clamped to " +
                                    std::to_string(size));
            quota = size;
        }
        if (quota == 0) continue;

        std::mt19937_64 rng(derive_stream_seed(seed, stratum.tactic.local, stratum.group.local));
        std::vector<std::uint64_t> indices(size);
        for (std::uint64_t i = 0; i < size; ++i) indices[i] = i;
        for (std::uint64_t i = 0; i < quota; ++i) {
            std::uint64_t j = i + bounded_uniform(rng, size - i);
            std::swap(indices[i], indices[j]);
        }
        indices.resize(quota);
        std::sort(indices.begin(), indices.end());

        for (std::uint64_t index : indices) {
            const std::string& technique = stratum_techniques[index / stratum_tasks.size()];
            const std::string& task = stratum_tasks[index % stratum_tasks.size()];
            draw.pairs.emplace_back(ItemId{std::string(kAttackSlug), technique},
                                    ItemId{std::string(kPsscrmSlug), task});
        }
    }
    return draw;
}

}  // namespace crosswalk
