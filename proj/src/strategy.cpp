#include "crosswalk/strategy.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

std::string_view to_string(StrategyTag tag) {
    switch (tag) {
        case StrategyTag::m1_transitive: return "m1";
        case StrategyTag::m2_llm: return "m2";
        case StrategyTag::m3_setmap: return "m3";
        case StrategyTag::m4_report: return "m4";
    }
    return "m1";
}

StrategyTag parse_strategy_tag(std::string_view text) {
    for (StrategyTag tag : kAllStrategies) {
        if (text == to_string(tag)) return tag;
    }
    throw ValidationError("unknown strategy tag '" + std::string(text) +
                          "' (expected m1|m2|m3|m4)");
}

void validate_candidate(const CandidateMapping& candidate) {
    if (!is_candidate_technique(candidate.technique)) {
        throw ValidationError("candidate technique '" + candidate.technique.str() +
                              "' is not an attack technique id");
    }
    if (!is_candidate_task(candidate.task)) {
        throw ValidationError("candidate task '" + candidate.task.str() +
                              "' is not a task-level psscrm id");
    }
    if (!candidate.evidence.is_object() || candidate.evidence.empty()) {
        throw ValidationError("candidate (" + candidate.technique.local + ", " +
                              candidate.task.local + ") has empty evidence");
    }
}

void write_candidates(std::ostream& out, std::span<const CandidateMapping> candidates) {
    for (const CandidateMapping& candidate : candidates) {
        out << candidate.technique.local << '\t' << candidate.task.local << '\t'
            << to_string(candidate.strategy) << '\t' << candidate.evidence.dump() << '\n';
    }
}

void write_candidates_file(const std::filesystem::path& path,
                           std::span<const CandidateMapping> candidates) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    write_candidates(out, candidates);
}

std::vector<CandidateMapping> parse_candidates(std::string_view text, const std::string& origin) {
    std::vector<CandidateMapping> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (!line.empty() && line.front() != '#') {
            std::size_t t1 = line.find('\t');
            std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
            std::size_t t3 = t2 == std::string_view::npos ? t2 : line.find('\t', t2 + 1);
            if (t3 == std::string_view::npos) {
                throw ParseError(origin, line_no,
                                 "expected 'technique<TAB>task<TAB>strategy<TAB>evidence'");
            }
            CandidateMapping candidate;
            candidate.technique = ItemId{std::string(kAttackSlug), std::string(line.substr(0, t1))};
            candidate.task =
                ItemId{std::string(kPsscrmSlug), std::string(line.substr(t1 + 1, t2 - t1 - 1))};
            try {
                candidate.strategy = parse_strategy_tag(line.substr(t2 + 1, t3 - t2 - 1));
                candidate.evidence =
                    nlohmann::json::parse(line.substr(t3 + 1), nullptr, /*allow_exceptions=*/true);
                validate_candidate(candidate);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(origin, line_no, std::string("bad evidence json: ") + e.what());
            } catch (const ValidationError& e) {
                throw ParseError(origin, line_no, e.what());
            }
            out.push_back(std::move(candidate));
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<CandidateMapping> read_candidates_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_candidates(buffer.str(), path.string());
}

}  // namespace crosswalk
