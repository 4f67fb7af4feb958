#pragma once

#include <span>
#include <string>
#include <string_view>

#include "crosswalk/catalog.hpp"
#include "crosswalk/triangulate.hpp"

namespace crosswalk {

enum class ExportFormat { json, csv, markdown };

ExportFormat parse_export_format(std::string_view text);

// Renders the mapping set for machine consumption. Titles come from the
// catalogs when available, otherwise stay empty. Rows found by all four
// strategies are bolded in markdown.
//   json:     array of {technique, technique_title, task, task_title,
//             strategies: [...], all_four: bool}
//   csv:      same columns, RFC-style quoting
//   markdown: one table row per mapping
std::string export_mappings(std::span<const TriangulatedMapping> mappings, ExportFormat format,
                            const CatalogMap& catalogs);

// Inverse of the json exporter; evidence is not part of the export schema, so
// reimported mappings carry strategies only.
std::vector<TriangulatedMapping> import_json(std::string_view text, const std::string& origin);

}  // namespace crosswalk
