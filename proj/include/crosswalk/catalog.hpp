#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crosswalk/ids.hpp"

namespace crosswalk {

// One identifiable unit of a framework: technique, tactic, task, control...
struct CatalogItem {
    ItemId id;
    std::string title;
    ItemLevel level = ItemLevel::generic;
    std::vector<ItemId> parents;  // a technique may belong to several tactics

    bool operator==(const CatalogItem&) const = default;
};

// Indexed, validated framework catalog. Immutable after construction, safe for
// concurrent reads.
class Catalog {
public:
    // Validates every invariant: unique ids, id patterns, level/pattern
    // agreement, parents resolving to strictly higher-ranked items, every
    // technique carrying at least one tactic parent.
    Catalog(FrameworkRef framework, std::vector<CatalogItem> items);

    const FrameworkRef& framework() const { return framework_; }
    const std::vector<CatalogItem>& items() const { return items_; }  // load order

    const CatalogItem* find(std::string_view local) const;
    std::vector<const CatalogItem*> items_at(ItemLevel level) const;
    std::size_t count_at(ItemLevel level) const;

    bool operator==(const Catalog& other) const {
        return framework_ == other.framework_ && items_ == other.items_;
    }

private:
    FrameworkRef framework_;
    std::vector<CatalogItem> items_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Catalogs of a corpus, keyed by slug.
using CatalogMap = std::map<std::string, Catalog, std::less<>>;

// Catalog file format, one record per line:
//   #framework <slug> <name...> <version>
//   id<TAB>level<TAB>title<TAB>parent1,parent2,...
// Other lines starting with '#' and blank lines are ignored. The parents
// column may be empty or absent.
Catalog parse_catalog(std::string_view text, const std::string& origin);
Catalog load_catalog(const std::filesystem::path& path);
std::string serialize_catalog(const Catalog& catalog);

}  // namespace crosswalk
