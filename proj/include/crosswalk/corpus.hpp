#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "crosswalk/catalog.hpp"
#include "crosswalk/mapping_set.hpp"
#include "crosswalk/report.hpp"

namespace crosswalk {

// Everything loaded from a corpus directory. Immutable after load; safe for
// concurrent reads.
struct Corpus {
    CatalogMap catalogs;
    std::vector<MappingSet> mapping_sets;  // framework-to-framework transitive data
    std::vector<MappingSet> setmap_sets;   // intra-attack and attack-psscrm task sets
    std::vector<Annotation> annotations;
    std::vector<std::string> warnings;

    const Catalog& require_catalog(std::string_view slug) const;
};

// Corpus directory layout (all files load in filename order):
//   <dir>/catalogs/*      one catalog file each
//   <dir>/mappings/*      framework-to-framework mapping sets (graph edges)
//   <dir>/setmaps/*       technique-mitigation and mitigation-task sets
//   <dir>/annotations/*   report annotation files
// Only catalogs/ is required. Catalog slugs must be unique across the corpus.
Corpus load_corpus(const std::filesystem::path& dir, bool strict = true);

}  // namespace crosswalk
