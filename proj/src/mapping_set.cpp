#include "crosswalk/mapping_set.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

std::string_view to_string(Relationship rel) {
    switch (rel) {
        case Relationship::equivalent: return "equivalent";
        case Relationship::supportive: return "supportive";
        case Relationship::set: return "set";
    }
    return "supportive";
}

Relationship parse_relationship(std::string_view text) {
    if (text == "equivalent") return Relationship::equivalent;
    if (text == "supportive") return Relationship::supportive;
    if (text == "set") return Relationship::set;
    throw ValidationError("unknown relationship '" + std::string(text) +
                          "' (expected equivalent|supportive|set)");
}

MappingSet::MappingSet(std::array<std::string, 2> endpoints, Relationship relationship,
                       std::string provenance, std::vector<Link> links)
    : endpoints_(std::move(endpoints)),
      relationship_(relationship),
      provenance_(std::move(provenance)),
      links_(std::move(links)) {
    for (const std::string& slug : endpoints_) {
        if (slug.empty()) throw ValidationError("mapping set endpoint slug must be non-empty");
    }
    if (endpoints_[0] > endpoints_[1]) std::swap(endpoints_[0], endpoints_[1]);

    for (Link& link : links_) {
        if (link.a.framework == endpoints_[1] && link.b.framework == endpoints_[0] &&
            endpoints_[0] != endpoints_[1]) {
            std::swap(link.a, link.b);
        }
        if (link.a.framework != endpoints_[0] || link.b.framework != endpoints_[1]) {
            throw ValidationError("link " + link.a.str() + " <-> " + link.b.str() +
                                  " does not match endpoints " + endpoints_[0] + "/" +
                                  endpoints_[1]);
        }
        if (self_pair() && link.b.local < link.a.local) std::swap(link.a, link.b);
        for (const ItemId& id : {link.a, link.b}) {
            if (!is_valid_local(id.framework, id.local)) {
                throw ValidationError("id pattern violation: '" + id.local +
                                      "' is not a valid " + id.framework + " id");
            }
        }
    }
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

bool MappingSet::connects(std::string_view a, std::string_view b) const {
    if (a > b) std::swap(a, b);
    return endpoints_[0] == a && endpoints_[1] == b;
}

std::vector<ItemId> MappingSet::neighbors(const ItemId& item) const {
    std::vector<ItemId> out;
    for (const Link& link : links_) {
        if (link.a == item) out.push_back(link.b);
        if (link.b == item) out.push_back(link.a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MappingSetLoad parse_mapping_set(std::string_view text, const std::string& origin,
                                 const CatalogMap& catalogs, bool strict) {
    std::optional<std::array<std::string, 2>> endpoints;
    Relationship relationship = Relationship::supportive;
    std::string provenance;
    std::vector<Link> links;
    std::vector<std::string> warnings;
    std::array<bool, 2> endpoint_known = {false, false};

    auto check_item = [&](const ItemId& id, std::size_t line_no, bool known_framework) {
        if (!is_valid_local(id.framework, id.local)) {
            throw ParseError(origin, line_no,
                             "id pattern violation: '" + id.local + "' is not a valid " +
                                 id.framework + " id");
        }
        if (!known_framework) return;
        auto it = catalogs.find(id.framework);
        if (it == catalogs.end() || it->second.find(id.local)) return;
        if (strict) {
            throw ParseError(origin, line_no,
                             "unknown item '" + id.local + "' in framework '" + id.framework +
                                 "'");
        }
        warnings.push_back(origin + ":" + std::to_string(line_no) + ": unknown item '" +
                           id.local + "' in framework '" + id.framework + "' retained");
    };

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
        } else if (line.starts_with("#mapping")) {
            if (endpoints) throw ParseError(origin, line_no, "repeated #mapping header");
            std::istringstream in{std::string(line)};
            std::string tag, slug_a, slug_b, rel_token;
            in >> tag >> slug_a >> slug_b >> rel_token;
            std::getline(in >> std::ws, provenance);
            if (slug_a.empty() || slug_b.empty() || rel_token.empty() || provenance.empty()) {
                throw ParseError(origin, line_no,
                                 "expected '#mapping <slugA> <slugB> <relationship> <provenance>'");
            }
            try {
                relationship = parse_relationship(rel_token);
            } catch (const ValidationError& e) {
                throw ParseError(origin, line_no, e.what());
            }
            endpoints = {slug_a, slug_b};
            for (int side = 0; side < 2; ++side) {
                const std::string& slug = (*endpoints)[side];
                endpoint_known[side] = catalogs.contains(slug);
                if (endpoint_known[side]) continue;
                if (strict) {
                    throw ParseError(origin, line_no,
                                     "unknown endpoint framework '" + slug + "'");
                }
                warnings.push_back(origin + ":" + std::to_string(line_no) +
                                   ": unknown endpoint framework '" + slug +
                                   "', link items unvalidated");
            }
        } else if (line.front() == '#') {
            // comment
        } else {
            if (!endpoints) throw ParseError(origin, line_no, "record before #mapping header");
            std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
                throw ParseError(origin, line_no, "expected 'idA<TAB>idB'");
            }
            Link link{ItemId{(*endpoints)[0], std::string(line.substr(0, tab))},
                      ItemId{(*endpoints)[1], std::string(line.substr(tab + 1))}};
            if (link.a.local.empty() || link.b.local.empty()) {
                throw ParseError(origin, line_no, "empty id in link");
            }
            check_item(link.a, line_no, endpoint_known[0]);
            check_item(link.b, line_no, endpoint_known[1]);
            if ((*endpoints)[0] == (*endpoints)[1] && link.b.local < link.a.local) {
                std::swap(link.a, link.b);
            }
            if (std::find(links.begin(), links.end(), link) != links.end()) {
                warnings.push_back(origin + ":" + std::to_string(line_no) + ": duplicate link " +
                                   link.a.local + " <-> " + link.b.local + " collapsed");
            } else {
                links.push_back(std::move(link));
            }
        }

        if (end == std::string_view::npos) break;
        start = end + 1;
    }

    if (!endpoints) throw ParseError(origin, line_no, "missing #mapping header");
    return MappingSetLoad{
        MappingSet(std::move(*endpoints), relationship, std::move(provenance), std::move(links)),
        std::move(warnings)};
}

MappingSetLoad load_mapping_set(const std::filesystem::path& path, const CatalogMap& catalogs,
                                bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_mapping_set(buffer.str(), path.string(), catalogs, strict);
}

std::string serialize_mapping_set(const MappingSet& set) {
    std::ostringstream out;
    out << "#mapping " << set.endpoints()[0] << ' ' << set.endpoints()[1] << ' '
        << to_string(set.relationship()) << ' ' << set.provenance() << '\n';
    for (const Link& link : set.links()) {
        out << link.a.local << '\t' << link.b.local << '\n';
    }
    return out.str();
}

}  // namespace crosswalk
