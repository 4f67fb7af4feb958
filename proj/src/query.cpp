#include "crosswalk/query.hpp"

#include <algorithm>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::string first_line(std::string_view text) {
    std::size_t end = text.find('\n');
    return std::string(end == std::string_view::npos ? text : text.substr(0, end));
}

std::string truncate(std::string_view text, std::size_t limit) {
    if (text.size() <= limit) return std::string(text);
    return std::string(text.substr(0, limit)) + "...";
}

std::string summarize(StrategyTag tag, const nlohmann::json& record) {
    std::string out(to_string(tag));
    out += ' ';
    switch (tag) {
        case StrategyTag::m1_transitive:
            out += "chain: " + join(record.value("chain", std::vector<std::string>{}), " -> ");
            break;
        case StrategyTag::m2_llm:
            out += "response '" + first_line(record.value("response", "")) + "' (" +
                   record.value("mode", "") + ")";
            break;
        case StrategyTag::m3_setmap:
            out += "via " + join(record.value("mitigations", std::vector<std::string>{}), ", ");
            break;
        case StrategyTag::m4_report:
            out += "report " + record.value("report", "") + " (" + record.value("kind", "") +
                   "): \"" + truncate(record.value("quote", ""), 60) + "\"";
            break;
    }
    return out;
}

std::vector<std::string> summaries_of(const TriangulatedMapping& mapping) {
    std::vector<std::string> out;
    for (const auto& [tag, records] : mapping.evidence) {
        for (const nlohmann::json& record : records) {
            out.push_back(summarize(tag, record));
        }
    }
    return out;
}

void sort_matches(std::vector<QueryMatch>& matches) {
    std::sort(matches.begin(), matches.end(), [](const QueryMatch& a, const QueryMatch& b) {
        if (a.strategies.size() != b.strategies.size()) {
            return a.strategies.size() > b.strategies.size();
        }
        if (a.counterpart != b.counterpart) return a.counterpart < b.counterpart;
        return a.inherited < b.inherited;
    });
}

QueryMatch make_match(const TriangulatedMapping& mapping, ItemId counterpart, bool inherited) {
    QueryMatch match;
    match.counterpart = std::move(counterpart);
    match.strategies = mapping.strategies;
    match.all_four = mapping.all_four();
    match.inherited = inherited;
    match.evidence_summaries = summaries_of(mapping);
    return match;
}

std::string indent_block(const std::string& text, std::string_view prefix) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << prefix << line << '\n';
    return out.str();
}

}  // namespace

QueryResult query_by_technique(std::span<const TriangulatedMapping> mappings,
                               const Provenance& provenance, const ItemId& technique,
                               bool rollup) {
    if (!is_candidate_technique(technique)) {
        throw ValidationError("'" + technique.str() + "' is not an attack technique id");
    }
    QueryResult result;
    result.subject = technique;
    result.provenance = provenance;

    auto parent = parent_technique_local(technique.local);
    for (const TriangulatedMapping& mapping : mappings) {
        if (mapping.technique == technique) {
            result.matches.push_back(make_match(mapping, mapping.task, false));
        } else if (rollup && parent && mapping.technique.local == *parent &&
                   mapping.technique.framework == technique.framework) {
            result.matches.push_back(make_match(mapping, mapping.task, true));
        }
    }
    sort_matches(result.matches);
    if (result.matches.empty()) {
        result.warning = "technique '" + technique.local + "' has no mappings in this set";
    }
    return result;
}

QueryResult query_by_task(std::span<const TriangulatedMapping> mappings,
                          const Provenance& provenance, const ItemId& task) {
    if (!is_candidate_task(task)) {
        throw ValidationError("'" + task.str() + "' is not a task-level psscrm id");
    }
    QueryResult result;
    result.subject = task;
    result.provenance = provenance;
    for (const TriangulatedMapping& mapping : mappings) {
        if (mapping.task == task) {
            result.matches.push_back(make_match(mapping, mapping.technique, false));
        }
    }
    sort_matches(result.matches);
    if (result.matches.empty()) {
        result.warning = "task '" + task.local + "' has no mappings in this set";
    }
    return result;
}

TraceResult trace_pair(std::span<const TriangulatedMapping> mappings, const ItemId& technique,
                       const ItemId& task) {
    const TriangulatedMapping* found = nullptr;
    for (const TriangulatedMapping& mapping : mappings) {
        if (mapping.technique == technique && mapping.task == task) {
            found = &mapping;
            break;
        }
    }
    if (!found) {
        return TraceResult{false, "pair (" + technique.local + ", " + task.local +
                                      ") not found in mapping set\n"};
    }

    std::ostringstream out;
    out << "(" << technique.local << ", " << task.local << ") asserted by "
        << found->consensus_count() << " strategies\n";
    for (const auto& [tag, records] : found->evidence) {
        out << to_string(tag) << ":\n";
        for (const nlohmann::json& record : records) {
            switch (tag) {
                case StrategyTag::m1_transitive:
                    out << "  path:  " << join(record.value("path", std::vector<std::string>{}),
                                               " -> ")
                        << '\n';
                    out << "  chain: " << join(record.value("chain", std::vector<std::string>{}),
                                               " -> ")
                        << '\n';
                    break;
                case StrategyTag::m2_llm:
                    out << "  mode: " << record.value("mode", "") << '\n';
                    out << "  prompt:\n"
                        << indent_block(record.value("prompt", ""), "    ");
                    out << "  response:\n"
                        << indent_block(record.value("response", ""), "    ");
                    break;
                case StrategyTag::m3_setmap:
                    out << "  mitigations: "
                        << join(record.value("mitigations", std::vector<std::string>{}), ", ")
                        << '\n';
                    break;
                case StrategyTag::m4_report:
                    out << "  report " << record.value("report", "") << " ("
                        << record.value("kind", "") << "): \"" << record.value("quote", "")
                        << "\"\n";
                    break;
            }
        }
    }
    return TraceResult{true, out.str()};
}

}  // namespace crosswalk
