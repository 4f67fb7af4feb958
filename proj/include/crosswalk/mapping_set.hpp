#pragma once

#include <array>
#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/catalog.hpp"
#include "crosswalk/ids.hpp"

namespace crosswalk {

enum class Relationship { equivalent, supportive, set };

std::string_view to_string(Relationship rel);
Relationship parse_relationship(std::string_view text);

// An unordered item pair. Canonical form keeps `a` on the first endpoint
// framework (lexicographically smaller slug); within a same-framework set the
// smaller local comes first.
struct Link {
    ItemId a;
    ItemId b;

    auto operator<=>(const Link&) const = default;
};

// A bidirectional framework-to-framework relation: a bag of symmetric item
// links plus provenance. Endpoints may name the same framework twice for
// intra-framework relations (e.g. technique <-> mitigation); such sets are
// loadable and joinable but are rejected as graph edges.
class MappingSet {
public:
    MappingSet(std::array<std::string, 2> endpoints, Relationship relationship,
               std::string provenance, std::vector<Link> links);

    const std::array<std::string, 2>& endpoints() const { return endpoints_; }
    bool self_pair() const { return endpoints_[0] == endpoints_[1]; }
    bool connects(std::string_view a, std::string_view b) const;
    Relationship relationship() const { return relationship_; }
    const std::string& provenance() const { return provenance_; }
    const std::vector<Link>& links() const { return links_; }  // sorted, unique

    // Symmetric lookup: b is a neighbor of a iff a is a neighbor of b.
    std::vector<ItemId> neighbors(const ItemId& item) const;

    bool operator==(const MappingSet&) const = default;

private:
    std::array<std::string, 2> endpoints_;
    Relationship relationship_ = Relationship::supportive;
    std::string provenance_;
    std::vector<Link> links_;
};

struct MappingSetLoad {
    MappingSet set;
    std::vector<std::string> warnings;  // duplicate links, unknown items (lenient)
};

// Mapping-set file format:
//   #mapping <slugA> <slugB> <relationship> <provenance...>
//   idA<TAB>idB
// In strict mode both endpoint frameworks must be present in `catalogs` and
// every link id must resolve; in lenient mode unknown frameworks and items are
// retained and reported as warnings. Duplicate links collapse with a warning
// in both modes.
MappingSetLoad parse_mapping_set(std::string_view text, const std::string& origin,
                                 const CatalogMap& catalogs, bool strict = true);
MappingSetLoad load_mapping_set(const std::filesystem::path& path, const CatalogMap& catalogs,
                                bool strict = true);
std::string serialize_mapping_set(const MappingSet& set);

}  // namespace crosswalk
