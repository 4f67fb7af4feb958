#include "crosswalk/triangulate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

std::string_view to_string(UniverseMode mode) {
    return mode == UniverseMode::union_of_candidates ? "union_of_candidates"
                                                     : "full_cross_product";
}

UniverseMode parse_universe_mode(std::string_view text) {
    if (text == "union_of_candidates" || text == "union") return UniverseMode::union_of_candidates;
    if (text == "full_cross_product" || text == "full") return UniverseMode::full_cross_product;
    throw ValidationError("unknown universe mode '" + std::string(text) +
                          "' (expected union_of_candidates|full_cross_product)");
}

std::vector<TriangulatedMapping> dedupe(std::span<const CandidateMapping> candidates) {
    std::map<std::pair<ItemId, ItemId>, TriangulatedMapping> grouped;
    for (const CandidateMapping& candidate : candidates) {
        validate_candidate(candidate);
        auto key = std::make_pair(candidate.technique, candidate.task);
        auto [it, inserted] = grouped.try_emplace(key);
        if (inserted) {
            it->second.technique = candidate.technique;
            it->second.task = candidate.task;
        }
        it->second.strategies.insert(candidate.strategy);
        it->second.evidence[candidate.strategy].push_back(candidate.evidence);
    }
    std::vector<TriangulatedMapping> out;
    out.reserve(grouped.size());
    for (auto& [key, mapping] : grouped) out.push_back(std::move(mapping));
    return out;
}

AgreementMatrix build_agreement_matrix(std::span<const TriangulatedMapping> unique,
                                       UniverseMode mode,
                                       std::span<const std::pair<ItemId, ItemId>> universe) {
    AgreementMatrix matrix;
    if (mode == UniverseMode::union_of_candidates) {
        for (const TriangulatedMapping& mapping : unique) {
            matrix.units.emplace_back(mapping.technique, mapping.task);
        }
        std::sort(matrix.units.begin(), matrix.units.end());
        matrix.units.erase(std::unique(matrix.units.begin(), matrix.units.end()),
                           matrix.units.end());
    } else {
        if (universe.empty()) {
            throw ValidationError("full_cross_product universe mode requires a universe stream");
        }
        matrix.units.assign(universe.begin(), universe.end());
        std::sort(matrix.units.begin(), matrix.units.end());
        matrix.units.erase(std::unique(matrix.units.begin(), matrix.units.end()),
                           matrix.units.end());
    }

    std::map<std::pair<ItemId, ItemId>, std::size_t> row_of;
    for (std::size_t i = 0; i < matrix.units.size(); ++i) row_of[matrix.units[i]] = i;

    matrix.cells.assign(matrix.units.size(), {0, 0, 0, 0});
    for (const TriangulatedMapping& mapping : unique) {
        auto it = row_of.find({mapping.technique, mapping.task});
        if (it == row_of.end()) {
            throw ValidationError("pair (" + mapping.technique.local + ", " +
                                  mapping.task.local + ") lies outside the universe");
        }
        for (std::size_t c = 0; c < kAllStrategies.size(); ++c) {
            if (mapping.strategies.contains(kAllStrategies[c])) {
                matrix.cells[it->second][c] = 1;
            }
        }
    }
    return matrix;
}

double krippendorff_alpha(std::span<const std::vector<int>> rows) {
    if (rows.size() < 2) {
        throw ValidationError("alpha needs at least 2 units");
    }

    // category -> pooled count over pairable units
    std::map<int, double> totals;
    double n = 0;             // total pairable values
    double observed_sum = 0;  // sum over c != k of coincidences o_ck

    for (const std::vector<int>& row : rows) {
        std::map<int, double> counts;
        double m = 0;
        for (int value : row) {
            if (value < 0) continue;
            counts[value] += 1;
            m += 1;
        }
        if (m < 2) continue;  // not pairable
        n += m;
        double disagreeing = m * m;  // ordered value pairs with differing values
        for (const auto& [category, count] : counts) {
            totals[category] += count;
            disagreeing -= count * count;
        }
        observed_sum += disagreeing / (m - 1);
    }

    if (n == 0) {
        throw ValidationError("alpha undefined: no unit has two pairable values");
    }
    if (totals.size() < 2) {
        throw ValidationError("alpha undefined: single category");
    }

    double expected_sum = n * n;  // sum over c != k of n_c * n_k
    for (const auto& [category, count] : totals) expected_sum -= count * count;

    return 1.0 - (n - 1.0) * observed_sum / expected_sum;
}

double krippendorff_alpha(const AgreementMatrix& matrix) {
    std::vector<std::vector<int>> rows;
    rows.reserve(matrix.cells.size());
    for (const auto& cell : matrix.cells) {
        rows.push_back({cell[0], cell[1], cell[2], cell[3]});
    }
    return krippendorff_alpha(rows);
}

std::map<std::string, double> pairwise_agreement(const AgreementMatrix& matrix) {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < kAllStrategies.size(); ++i) {
        for (std::size_t j = i + 1; j < kAllStrategies.size(); ++j) {
            std::size_t both = 0;
            std::size_t equal = 0;
            for (const auto& cell : matrix.cells) {
                if (cell[i] < 0 || cell[j] < 0) continue;
                ++both;
                if (cell[i] == cell[j]) ++equal;
            }
            if (both == 0) continue;
            std::string key = std::string(to_string(kAllStrategies[i])) + ":" +
                              std::string(to_string(kAllStrategies[j]));
            out[key] = static_cast<double>(equal) / static_cast<double>(both);
        }
    }
    return out;
}

std::vector<TriangulatedMapping> filter_by_consensus(std::span<const TriangulatedMapping> unique,
                                                     int threshold) {
    if (threshold < 1 || threshold > static_cast<int>(kAllStrategies.size())) {
        throw ValidationError("consensus threshold must be between 1 and 4");
    }
    std::vector<TriangulatedMapping> out;
    for (const TriangulatedMapping& mapping : unique) {
        if (mapping.consensus_count() >= threshold) out.push_back(mapping);
    }
    std::sort(out.begin(), out.end(), [](const TriangulatedMapping& a,
                                         const TriangulatedMapping& b) {
        return std::tie(a.technique, a.task) < std::tie(b.technique, b.task);
    });
    return out;
}

void write_triangulated(std::ostream& out, std::span<const TriangulatedMapping> mappings,
                        const Provenance& provenance) {
    out << "#triangulated 1\n";
    if (!provenance.universe_mode.empty()) {
        out << "#universe " << provenance.universe_mode << '\n';
    }
    if (!provenance.digest.empty()) {
        out << "#digest " << provenance.digest << '\n';
    }
    for (const auto& [slug, version] : provenance.corpus_versions) {
        out << "#corpus " << slug << ' ' << version << '\n';
    }
    for (const TriangulatedMapping& mapping : mappings) {
        out << mapping.technique.local << '\t' << mapping.task.local << '\t';
        bool first = true;
        for (StrategyTag tag : mapping.strategies) {
            if (!first) out << ',';
            out << to_string(tag);
            first = false;
        }
        nlohmann::json evidence = nlohmann::json::object();
        for (const auto& [tag, records] : mapping.evidence) {
            evidence[std::string(to_string(tag))] = records;
        }
        out << '\t' << evidence.dump() << '\n';
    }
}

void write_triangulated_file(const std::filesystem::path& path,
                             std::span<const TriangulatedMapping> mappings,
                             const Provenance& provenance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    write_triangulated(out, mappings, provenance);
}

TriangulatedFile parse_triangulated(std::string_view text, const std::string& origin) {
    TriangulatedFile file;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line.starts_with("#universe ")) {
            file.provenance.universe_mode = std::string(line.substr(10));
        } else if (line.starts_with("#digest ")) {
            file.provenance.digest = std::string(line.substr(8));
        } else if (line.starts_with("#corpus ")) {
            std::istringstream in{std::string(line.substr(8))};
            std::string slug, version;
            in >> slug >> version;
            if (slug.empty() || version.empty()) {
                throw ParseError(origin, line_no, "expected '#corpus <slug> <version>'");
            }
            file.provenance.corpus_versions.emplace_back(slug, version);
        } else if (!line.empty() && line.front() != '#') {
            std::size_t t1 = line.find('\t');
            std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
            std::size_t t3 = t2 == std::string_view::npos ? t2 : line.find('\t', t2 + 1);
            if (t3 == std::string_view::npos) {
                throw ParseError(origin, line_no,
                                 "expected 'technique<TAB>task<TAB>strategies<TAB>evidence'");
            }
            TriangulatedMapping mapping;
            mapping.technique =
                ItemId{std::string(kAttackSlug), std::string(line.substr(0, t1))};
            mapping.task =
                ItemId{std::string(kPsscrmSlug), std::string(line.substr(t1 + 1, t2 - t1 - 1))};
            try {
                std::string_view tags = line.substr(t2 + 1, t3 - t2 - 1);
                std::size_t tag_start = 0;
                while (tag_start <= tags.size()) {
                    std::size_t comma = tags.find(',', tag_start);
                    std::string_view tag = comma == std::string_view::npos
                                               ? tags.substr(tag_start)
                                               : tags.substr(tag_start, comma - tag_start);
                    mapping.strategies.insert(parse_strategy_tag(tag));
                    if (comma == std::string_view::npos) break;
                    tag_start = comma + 1;
                }
                nlohmann::json evidence = nlohmann::json::parse(line.substr(t3 + 1));
                if (!evidence.is_object()) {
                    throw ValidationError("evidence must be a json object keyed by strategy");
                }
                for (const auto& [tag_text, records] : evidence.items()) {
                    StrategyTag tag = parse_strategy_tag(tag_text);
                    if (!records.is_array()) {
                        throw ValidationError("evidence for " + tag_text + " must be an array");
                    }
                    for (const auto& record : records) {
                        mapping.evidence[tag].push_back(record);
                    }
                }
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(origin, line_no, std::string("bad evidence json: ") + e.what());
            } catch (const ValidationError& e) {
                throw ParseError(origin, line_no, e.what());
            }
            if (mapping.strategies.empty()) {
                throw ParseError(origin, line_no, "record lists no strategies");
            }
            file.mappings.push_back(std::move(mapping));
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return file;
}

TriangulatedFile read_triangulated_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_triangulated(buffer.str(), path.string());
}

nlohmann::json alpha_report_json(const AlphaReport& report) {
    nlohmann::json out;
    if (report.alpha) {
        out["alpha"] = *report.alpha;
    } else {
        out["alpha"] = nullptr;
        out["error"] = report.error;
    }
    out["universe_mode"] = std::string(to_string(report.universe_mode));
    out["unit_count"] = report.unit_count;
    out["per_strategy_counts"] = report.per_strategy_counts;
    out["pairwise_agreement"] = report.pairwise;
    return out;
}

void write_alpha_json(const std::filesystem::path& path, const AlphaReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << alpha_report_json(report).dump(2) << '\n';
}

}  // namespace crosswalk
