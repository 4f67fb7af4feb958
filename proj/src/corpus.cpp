#include "crosswalk/corpus.hpp"

#include <algorithm>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::exists(dir)) return files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

const Catalog& Corpus::require_catalog(std::string_view slug) const {
    auto it = catalogs.find(slug);
    if (it == catalogs.end()) {
        throw ValidationError("corpus has no catalog for framework '" + std::string(slug) + "'");
    }
    return it->second;
}

Corpus load_corpus(const std::filesystem::path& dir, bool strict) {
    if (!std::filesystem::is_directory(dir)) {
        throw ValidationError("corpus directory '" + dir.string() + "' does not exist");
    }
    Corpus corpus;
    for (const auto& path : sorted_files(dir / "catalogs")) {
        Catalog catalog = load_catalog(path);
        std::string slug = catalog.framework().slug;
        auto [it, inserted] = corpus.catalogs.emplace(slug, std::move(catalog));
        if (!inserted) {
            throw ValidationError("duplicate catalog slug '" + slug + "' loaded from " +
                                  path.string());
        }
    }
    auto load_sets = [&](const char* subdir, std::vector<MappingSet>& into) {
        for (const auto& path : sorted_files(dir / subdir)) {
            MappingSetLoad load = load_mapping_set(path, corpus.catalogs, strict);
            into.push_back(std::move(load.set));
            corpus.warnings.insert(corpus.warnings.end(),
                                   std::make_move_iterator(load.warnings.begin()),
                                   std::make_move_iterator(load.warnings.end()));
        }
    };
    load_sets("mappings", corpus.mapping_sets);
    load_sets("setmaps", corpus.setmap_sets);
    for (const auto& path : sorted_files(dir / "annotations")) {
        std::vector<Annotation> annotations = load_annotations(path);
        corpus.annotations.insert(corpus.annotations.end(),
                                  std::make_move_iterator(annotations.begin()),
                                  std::make_move_iterator(annotations.end()));
    }
    return corpus;
}

}  // namespace crosswalk
