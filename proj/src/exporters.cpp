#include "crosswalk/exporters.hpp"

#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

std::string title_of(const CatalogMap& catalogs, const ItemId& id) {
    auto it = catalogs.find(id.framework);
    if (it == catalogs.end()) return "";
    const CatalogItem* item = it->second.find(id.local);
    return item ? item->title : "";
}

std::vector<std::string> strategy_names(const TriangulatedMapping& mapping) {
    std::vector<std::string> out;
    for (StrategyTag tag : mapping.strategies) out.emplace_back(to_string(tag));
    return out;
}

std::string csv_quote(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string markdown_escape(std::string_view field) {
    std::string out;
    for (char c : field) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

ExportFormat parse_export_format(std::string_view text) {
    if (text == "json") return ExportFormat::json;
    if (text == "csv") return ExportFormat::csv;
    if (text == "markdown" || text == "md") return ExportFormat::markdown;
    throw ValidationError("unknown export format '" + std::string(text) +
                          "' (expected json|csv|markdown)");
}

std::string export_mappings(std::span<const TriangulatedMapping> mappings, ExportFormat format,
                            const CatalogMap& catalogs) {
    switch (format) {
        case ExportFormat::json: {
            nlohmann::json array = nlohmann::json::array();
            for (const TriangulatedMapping& mapping : mappings) {
                array.push_back({{"technique", mapping.technique.local},
                                 {"technique_title", title_of(catalogs, mapping.technique)},
                                 {"task", mapping.task.local},
                                 {"task_title", title_of(catalogs, mapping.task)},
                                 {"strategies", strategy_names(mapping)},
                                 {"all_four", mapping.all_four()}});
            }
            return array.dump(2) + "\n";
        }
        case ExportFormat::csv: {
            std::ostringstream out;
            out << "technique,technique_title,task,task_title,strategies,all_four\r\n";
            for (const TriangulatedMapping& mapping : mappings) {
                out << csv_quote(mapping.technique.local) << ','
                    << csv_quote(title_of(catalogs, mapping.technique)) << ','
                    << csv_quote(mapping.task.local) << ','
                    << csv_quote(title_of(catalogs, mapping.task)) << ','
                    << csv_quote(join(strategy_names(mapping), ",")) << ','
                    << (mapping.all_four() ? "true" : "false") << "\r\n";
            }
            return out.str();
        }
        case ExportFormat::markdown: {
            std::ostringstream out;
            out << "| Technique | Technique title | Task | Task title | Strategies |\n";
            out << "| --- | --- | --- | --- | --- |\n";
            for (const TriangulatedMapping& mapping : mappings) {
                bool bold = mapping.all_four();
                auto cell = [&](const std::string& text) {
                    return bold ? "**" + markdown_escape(text) + "**" : markdown_escape(text);
                };
                out << "| " << cell(mapping.technique.local) << " | "
                    << markdown_escape(title_of(catalogs, mapping.technique)) << " | "
                    << cell(mapping.task.local) << " | "
                    << markdown_escape(title_of(catalogs, mapping.task)) << " | "
                    << join(strategy_names(mapping), ", ") << " |\n";
            }
            return out.str();
        }
    }
    throw ValidationError("unknown export format");
}

std::vector<TriangulatedMapping> import_json(std::string_view text, const std::string& origin) {
    nlohmann::json array;
    try {
        array = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin, 0, std::string("bad json: ") + e.what());
    }
    if (!array.is_array()) throw ParseError(origin, 0, "expected a json array of mappings");

    std::vector<TriangulatedMapping> out;
    for (const nlohmann::json& row : array) {
        TriangulatedMapping mapping;
        try {
            mapping.technique =
                ItemId{std::string(kAttackSlug), row.at("technique").get<std::string>()};
            mapping.task = ItemId{std::string(kPsscrmSlug), row.at("task").get<std::string>()};
            for (const nlohmann::json& tag : row.at("strategies")) {
                mapping.strategies.insert(parse_strategy_tag(tag.get<std::string>()));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(origin, 0, std::string("bad mapping row: ") + e.what());
        } catch (const ValidationError& e) {
            throw ParseError(origin, 0, e.what());
        }
        if (mapping.strategies.empty()) {
            throw ParseError(origin, 0, "mapping row lists no strategies");
        }
        out.push_back(std::move(mapping));
    }
    return out;
}

}  // namespace crosswalk
