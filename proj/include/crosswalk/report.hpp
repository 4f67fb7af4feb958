#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crosswalk/strategy.hpp"

namespace crosswalk {

enum class AnnotationKind { event, recommendation };

std::string_view to_string(AnnotationKind kind);
AnnotationKind parse_annotation_kind(std::string_view text);

// One hand-coded extract from a threat-intelligence report: a verbatim quote
// tied to the techniques it evidences and the tasks that mitigate them.
struct Annotation {
    std::string report_id;
    AnnotationKind kind = AnnotationKind::event;
    std::vector<ItemId> techniques;
    std::vector<ItemId> tasks;
    std::string quote;

    bool operator==(const Annotation&) const = default;
};

// Annotation file: one record per line,
//   report_id | kind | technique ids | task ids | quote
// id lists are comma-separated; the quote is everything after the fourth
// pipe and may itself contain pipes. '#' lines and blank lines are ignored.
std::vector<Annotation> parse_annotations(std::string_view text, const std::string& origin);
std::vector<Annotation> load_annotations(const std::filesystem::path& path);

// Strategy M4: the technique x task cross-product of each annotation, with the
// report id, quote, and kind as evidence. Candidates sort by (technique, task)
// keeping annotation order within a pair.
std::vector<CandidateMapping> run_report_strategy(std::span<const Annotation> annotations);

}  // namespace crosswalk
