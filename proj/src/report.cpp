#include "crosswalk/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ids(std::string_view field) {
    std::vector<std::string_view> ids;
    std::size_t start = 0;
    while (start <= field.size()) {
        std::size_t comma = field.find(',', start);
        std::string_view id = trim(comma == std::string_view::npos
                                       ? field.substr(start)
                                       : field.substr(start, comma - start));
        if (!id.empty()) ids.push_back(id);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ids;
}

}  // namespace

std::string_view to_string(AnnotationKind kind) {
    return kind == AnnotationKind::event ? "event" : "recommendation";
}

AnnotationKind parse_annotation_kind(std::string_view text) {
    if (text == "event") return AnnotationKind::event;
    if (text == "recommendation") return AnnotationKind::recommendation;
    throw ValidationError("unknown annotation kind '" + std::string(text) +
                          "' (expected event|recommendation)");
}

std::vector<Annotation> parse_annotations(std::string_view text, const std::string& origin) {
    std::vector<Annotation> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line =
            end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (!line.empty() && line.front() != '#') {
            std::array<std::size_t, 4> pipes{};
            std::size_t from = 0;
            for (std::size_t& pipe : pipes) {
                pipe = line.find('|', from);
                if (pipe == std::string_view::npos) {
                    throw ParseError(origin, line_no,
                                     "expected 'report_id | kind | techniques | tasks | quote'");
                }
                from = pipe + 1;
            }

            Annotation annotation;
            annotation.report_id = std::string(trim(line.substr(0, pipes[0])));
            std::string_view kind_field =
                trim(line.substr(pipes[0] + 1, pipes[1] - pipes[0] - 1));
            try {
                annotation.kind = parse_annotation_kind(kind_field);
            } catch (const ValidationError& e) {
                throw ParseError(origin, line_no, e.what());
            }
            for (std::string_view id :
                 split_ids(line.substr(pipes[1] + 1, pipes[2] - pipes[1] - 1))) {
                if (!is_attack_technique_local(id)) {
                    throw ParseError(origin, line_no,
                                     "'" + std::string(id) + "' is not an attack technique id");
                }
                annotation.techniques.push_back(ItemId{std::string(kAttackSlug), std::string(id)});
            }
            for (std::string_view id :
                 split_ids(line.substr(pipes[2] + 1, pipes[3] - pipes[2] - 1))) {
                if (psscrm_depth(id) != 3) {
                    throw ParseError(origin, line_no,
                                     "'" + std::string(id) + "' is not a task-level psscrm id");
                }
                annotation.tasks.push_back(ItemId{std::string(kPsscrmSlug), std::string(id)});
            }
            annotation.quote = std::string(trim(line.substr(pipes[3] + 1)));

            if (annotation.report_id.empty()) {
                throw ParseError(origin, line_no, "empty report id");
            }
            if (annotation.techniques.empty()) {
                throw ParseError(origin, line_no, "annotation lists no techniques");
            }
            if (annotation.tasks.empty()) {
                throw ParseError(origin, line_no, "annotation lists no tasks");
            }
            if (annotation.quote.empty()) {
                throw ParseError(origin, line_no, "annotation quote is empty");
            }
            out.push_back(std::move(annotation));
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<Annotation> load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_annotations(buffer.str(), path.string());
}

std::vector<CandidateMapping> run_report_strategy(std::span<const Annotation> annotations) {
    std::vector<CandidateMapping> out;
    for (const Annotation& annotation : annotations) {
        std::vector<ItemId> techniques = annotation.techniques;
        std::vector<ItemId> tasks = annotation.tasks;
        std::sort(techniques.begin(), techniques.end());
        techniques.erase(std::unique(techniques.begin(), techniques.end()), techniques.end());
        std::sort(tasks.begin(), tasks.end());
        tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());

        for (const ItemId& technique : techniques) {
            for (const ItemId& task : tasks) {
                out.push_back(CandidateMapping{
                    technique, task, StrategyTag::m4_report,
                    nlohmann::json{{"report", annotation.report_id},
                                   {"kind", to_string(annotation.kind)},
                                   {"quote", annotation.quote}}});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CandidateMapping& a,
                                                const CandidateMapping& b) {
        return std::tie(a.technique, a.task) < std::tie(b.technique, b.task);
    });
    return out;
}

}  // namespace crosswalk
