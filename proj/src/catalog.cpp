#include "crosswalk/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

struct CatalogViolation {
    std::size_t item_index;
    std::string message;
};

std::optional<CatalogViolation> first_catalog_violation(const FrameworkRef& framework,
                                                        const std::vector<CatalogItem>& items) {
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const CatalogItem& item = items[i];
        if (item.id.framework != framework.slug) {
            return CatalogViolation{i, "item '" + item.id.local + "' belongs to framework '" +
                                           item.id.framework + "', expected '" + framework.slug +
                                           "'"};
        }
        if (!is_valid_local(framework.slug, item.id.local)) {
            return CatalogViolation{i, "id pattern violation: '" + item.id.local +
                                           "' is not a valid " + framework.slug + " id"};
        }
        if (auto implied = implied_level(framework.slug, item.id.local);
            implied && *implied != item.level) {
            return CatalogViolation{
                i, "id pattern violation: '" + item.id.local + "' encodes level '" +
                       std::string(to_string(*implied)) + "' but is declared '" +
                       std::string(to_string(item.level)) + "'"};
        }
        auto [it, inserted] = seen.emplace(item.id.local, i);
        if (!inserted) {
            return CatalogViolation{i, "duplicate id '" + item.id.local + "'"};
        }
    }

    for (std::size_t i = 0; i < items.size(); ++i) {
        const CatalogItem& item = items[i];
        if (item.level == ItemLevel::mitigation && !item.parents.empty()) {
            return CatalogViolation{i, "mitigation '" + item.id.local + "' may not have parents"};
        }
        bool has_tactic_parent = false;
        bool has_technique_parent = false;
        for (const ItemId& parent : item.parents) {
            if (parent.framework != framework.slug) {
                return CatalogViolation{i, "parent '" + parent.str() + "' of '" + item.id.local +
                                               "' points outside the catalog"};
            }
            auto it = seen.find(parent.local);
            if (it == seen.end()) {
                return CatalogViolation{i, "dangling parent reference '" + parent.local +
                                               "' on '" + item.id.local + "'"};
            }
            const CatalogItem& parent_item = items[it->second];
            auto child_rank = level_rank(item.level);
            auto parent_rank = level_rank(parent_item.level);
            if (child_rank && parent_rank && *parent_rank >= *child_rank) {
                return CatalogViolation{i, "parent '" + parent.local + "' of '" + item.id.local +
                                               "' is not of strictly higher rank"};
            }
            has_tactic_parent |= parent_item.level == ItemLevel::tactic;
            has_technique_parent |= parent_item.level == ItemLevel::technique;
        }
        if (item.level == ItemLevel::technique && !has_tactic_parent) {
            return CatalogViolation{i, "technique '" + item.id.local + "' has no tactic parent"};
        }
        if (item.level == ItemLevel::sub_technique && !has_technique_parent) {
            return CatalogViolation{i,
                                    "sub-technique '" + item.id.local + "' has no technique parent"};
        }
    }
    return std::nullopt;
}

std::vector<std::string> whitespace_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(text.substr(start));
            break;
        }
        fields.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

Catalog::Catalog(FrameworkRef framework, std::vector<CatalogItem> items)
    : framework_(std::move(framework)), items_(std::move(items)) {
    if (framework_.slug.empty() ||
        std::any_of(framework_.slug.begin(), framework_.slug.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
        throw ValidationError("framework slug must be non-empty without whitespace");
    }
    if (auto violation = first_catalog_violation(framework_, items_)) {
        throw ValidationError(violation->message);
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
        index_.emplace(items_[i].id.local, i);
    }
}

const CatalogItem* Catalog::find(std::string_view local) const {
    auto it = index_.find(std::string(local));
    return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<const CatalogItem*> Catalog::items_at(ItemLevel level) const {
    std::vector<const CatalogItem*> out;
    for (const CatalogItem& item : items_) {
        if (item.level == level) out.push_back(&item);
    }
    return out;
}

std::size_t Catalog::count_at(ItemLevel level) const {
    return static_cast<std::size_t>(
        std::count_if(items_.begin(), items_.end(),
                      [&](const CatalogItem& item) { return item.level == level; }));
}

Catalog parse_catalog(std::string_view text, const std::string& origin) {
    std::optional<FrameworkRef> framework;
    std::vector<CatalogItem> items;
    std::vector<std::size_t> item_lines;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = strip_cr(
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start));
        ++line_no;
        if (end == std::string_view::npos && line.empty()) break;

        if (line.empty()) {
            // skip
        } else if (line.starts_with("#framework")) {
            if (framework) throw ParseError(origin, line_no, "repeated #framework header");
            auto tokens = whitespace_tokens(line);
            if (tokens.size() < 4) {
                throw ParseError(origin, line_no,
                                 "expected '#framework <slug> <name> <version>'");
            }
            FrameworkRef ref;
            ref.slug = tokens[1];
            ref.version = tokens.back();
            for (std::size_t i = 2; i + 1 < tokens.size(); ++i) {
                if (i > 2) ref.name += ' ';
                ref.name += tokens[i];
            }
            framework = std::move(ref);
        } else if (line.front() == '#') {
            // comment
        } else {
            if (!framework) {
                throw ParseError(origin, line_no, "record before #framework header");
            }
            auto fields = split(line, '\t');
            if (fields.size() < 3 || fields.size() > 4) {
                throw ParseError(origin, line_no,
                                 "expected 'id<TAB>level<TAB>title[<TAB>parents]'");
            }
            CatalogItem item;
            item.id = ItemId{framework->slug, std::string(fields[0])};
            try {
                item.level = parse_item_level(fields[1]);
            } catch (const ValidationError& e) {
                throw ParseError(origin, line_no, e.what());
            }
            item.title = std::string(fields[2]);
            if (fields.size() == 4 && !fields[3].empty()) {
                for (std::string_view parent : split(fields[3], ',')) {
                    if (parent.empty()) {
                        throw ParseError(origin, line_no, "empty parent id");
                    }
                    item.parents.push_back(ItemId{framework->slug, std::string(parent)});
                }
            }
            items.push_back(std::move(item));
            item_lines.push_back(line_no);
        }

        if (end == std::string_view::npos) break;
        start = end + 1;
    }

    if (!framework) throw ParseError(origin, line_no, "missing #framework header");
    if (auto violation = first_catalog_violation(*framework, items)) {
        throw ParseError(origin, item_lines[violation->item_index], violation->message);
    }
    return Catalog(std::move(*framework), std::move(items));
}

Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_catalog(buffer.str(), path.string());
}

std::string serialize_catalog(const Catalog& catalog) {
    std::ostringstream out;
    const FrameworkRef& fw = catalog.framework();
    out << "#framework " << fw.slug << ' ' << fw.name << ' ' << fw.version << '\n';
    for (const CatalogItem& item : catalog.items()) {
        out << item.id.local << '\t' << to_string(item.level) << '\t' << item.title;
        out << '\t';
        for (std::size_t i = 0; i < item.parents.size(); ++i) {
            if (i > 0) out << ',';
            out << item.parents[i].local;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace crosswalk
