// crosswalk: derives attack-technique to mitigation-task mappings between
// security frameworks by triangulating four independent strategies, then
// answers queries over the consensus set.

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "crosswalk/config.hpp"
#include "crosswalk/corpus.hpp"
#include "crosswalk/digest.hpp"
#include "crosswalk/errors.hpp"
#include "crosswalk/exporters.hpp"
#include "crosswalk/llm.hpp"
#include "crosswalk/pathgraph.hpp"
#include "crosswalk/query.hpp"
#include "crosswalk/report.hpp"
#include "crosswalk/sampling.hpp"
#include "crosswalk/setmap.hpp"
#include "crosswalk/transitive.hpp"
#include "crosswalk/triangulate.hpp"
#include "crosswalk/universe.hpp"

namespace {

using namespace crosswalk;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitProvider = 3;

struct GlobalArgs {
    std::string corpus_dir;
    std::uint64_t seed = 0;
    std::string config_path;
    bool lenient = false;
};

RunConfig effective_config(const GlobalArgs& global) {
    if (global.config_path.empty()) return RunConfig{};
    return load_run_config(global.config_path);
}

Corpus load_required_corpus(const GlobalArgs& global) {
    if (global.corpus_dir.empty()) {
        throw ValidationError("this command needs --corpus DIR");
    }
    Corpus corpus = load_corpus(global.corpus_dir, !global.lenient);
    for (const std::string& warning : corpus.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    return corpus;
}

// Data goes to stdout unless --out names a file.
void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_path);
    out << payload;
}

void emit_candidates(const std::string& out_path,
                     const std::vector<CandidateMapping>& candidates) {
    std::ostringstream buffer;
    write_candidates(buffer, candidates);
    emit(out_path, buffer.str());
}

std::unique_ptr<CompletionProvider> make_provider(const RunConfig& config) {
    if (config.provider_type == "stub") {
        if (config.stub_table.empty()) {
            throw ValidationError("stub provider needs provider.table in the config file");
        }
        return std::make_unique<StubProvider>(StubProvider::from_file(config.stub_table));
    }
    if (config.http.endpoint.empty()) {
        throw ValidationError("http provider needs provider.endpoint in the config file");
    }
    return std::make_unique<HttpProvider>(config.http);
}

std::vector<std::pair<ItemId, ItemId>> read_pairs_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::vector<std::pair<ItemId, ItemId>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path.string(), line_no, "expected 'technique<TAB>task'");
        }
        pairs.emplace_back(ItemId{std::string(kAttackSlug), line.substr(0, tab)},
                           ItemId{std::string(kPsscrmSlug), line.substr(tab + 1)});
    }
    return pairs;
}

Provenance corpus_provenance(const Corpus* corpus) {
    Provenance provenance;
    if (!corpus) return provenance;
    for (const auto& [slug, catalog] : corpus->catalogs) {
        provenance.corpus_versions.emplace_back(slug, catalog.framework().version);
    }
    return provenance;
}

int run_ingest(const GlobalArgs& global) {
    Corpus corpus = load_required_corpus(global);
    for (const auto& [slug, catalog] : corpus.catalogs) {
        std::cout << "framework " << slug << " (" << catalog.framework().name << " "
                  << catalog.framework().version << "): " << catalog.items().size() << " items";
        std::map<std::string, std::size_t> by_level;
        for (const CatalogItem& item : catalog.items()) {
            ++by_level[std::string(to_string(item.level))];
        }
        for (const auto& [level, count] : by_level) {
            std::cout << ", " << count << " " << level;
        }
        std::cout << '\n';
    }
    auto describe_sets = [](const char* label, const std::vector<MappingSet>& sets) {
        for (const MappingSet& set : sets) {
            std::cout << label << " " << set.endpoints()[0] << " <-> " << set.endpoints()[1]
                      << " (" << to_string(set.relationship()) << ", " << set.links().size()
                      << " links) from " << set.provenance() << '\n';
        }
    };
    describe_sets("mapping", corpus.mapping_sets);
    describe_sets("setmap", corpus.setmap_sets);
    std::cout << "annotations: " << corpus.annotations.size() << '\n';
    std::cout << "warnings: " << corpus.warnings.size() << '\n';
    return 0;
}

int run_paths(const GlobalArgs& global, const RunConfig& config, const std::string& source,
              const std::string& target, std::size_t cutoff, bool all,
              const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);
    FrameworkGraph graph = build_graph(corpus.mapping_sets);
    std::vector<SimplePath> paths = enumerate_simple_paths(graph, source, target,
                                                           cutoff ? cutoff : config.path_cutoff);
    if (!all) paths = prune_superset_paths(std::move(paths));
    std::ostringstream buffer;
    for (const SimplePath& path : paths) buffer << path.str() << '\n';
    emit(out_path, buffer.str());
    return 0;
}

int run_m1(const GlobalArgs& global, const RunConfig& config, const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);
    FrameworkGraph graph = build_graph(corpus.mapping_sets);
    std::vector<SimplePath> paths = prune_superset_paths(enumerate_simple_paths(
        graph, kAttackSlug, kPsscrmSlug, config.path_cutoff));

    TransitiveOptions options;
    options.per_path_result_cap = config.m1_per_path_cap;
    options.source_catalog = &corpus.require_catalog(kAttackSlug);
    options.target_catalog = &corpus.require_catalog(kPsscrmSlug);
    emit_candidates(out_path, run_transitive(graph, paths, corpus.mapping_sets, options));
    return 0;
}

int run_sample(const GlobalArgs& global, const RunConfig& config, std::uint64_t size,
               bool include_subtechniques, const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);
    const Catalog& attack = corpus.require_catalog(kAttackSlug);
    const Catalog& psscrm = corpus.require_catalog(kPsscrmSlug);
    bool subtech = include_subtechniques || config.include_subtechniques;

    auto strata = allocate_sample(build_strata(attack, psscrm, subtech),
                                  size ? size : config.sample_size);
    SampleDraw draw = draw_sample(strata, attack, psscrm, global.seed, subtech);
    for (const std::string& warning : draw.warnings) std::cerr << "warning: " << warning << '\n';

    std::ostringstream buffer;
    buffer << "# stratified sample, seed=" << global.seed << " pairs=" << draw.pairs.size()
           << '\n';
    for (const auto& [technique, task] : draw.pairs) {
        buffer << technique.local << '\t' << task.local << '\n';
    }
    emit(out_path, buffer.str());
    return 0;
}

int run_m2(const GlobalArgs& global, const RunConfig& config, const std::string& pairs_path,
           bool sweep, const std::string& labels_path, const std::string& mode_flag,
           const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);
    const Catalog& attack = corpus.require_catalog(kAttackSlug);
    const Catalog& psscrm = corpus.require_catalog(kPsscrmSlug);

    if (sweep == !pairs_path.empty()) {
        throw ValidationError("run-m2 needs exactly one of --pairs FILE or --sweep");
    }
    std::vector<std::pair<ItemId, ItemId>> pairs;
    if (sweep) {
        pairs = item_pairs_universe(attack, psscrm, config.include_subtechniques).distinct_pairs;
    } else {
        pairs = read_pairs_file(pairs_path);
    }

    PromptMode mode = mode_flag.empty() ? config.mode : parse_prompt_mode(mode_flag);
    std::unique_ptr<CompletionProvider> provider = make_provider(config);
    LlmRun run = run_llm_strategy(pairs, attack, psscrm, *provider, mode, config.prompt,
                                  config.judge);

    std::size_t undecided = 0;
    for (const PairVerdict& verdict : run.verdicts) {
        if (verdict.verdict == Verdict::undecided) {
            ++undecided;
            std::cerr << "undecided after retries: (" << verdict.technique.local << ", "
                      << verdict.task.local << ") last response: " << verdict.response << '\n';
        }
    }
    std::cerr << "judged " << run.verdicts.size() << " pairs with " << provider->describe()
              << ": " << run.candidates.size() << " mapped, " << undecided << " undecided\n";

    if (!labels_path.empty()) {
        std::vector<HumanLabel> labels = load_human_labels(labels_path);
        std::cerr << "agreement with human labels: " << agreement_rate(run.verdicts, labels)
                  << '\n';
    }
    emit_candidates(out_path, run.candidates);
    return 0;
}

int run_m3(const GlobalArgs& global, const std::string& tech_mit_path,
           const std::string& mit_task_path, const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);

    std::optional<MappingSet> technique_mitigations;
    std::optional<MappingSet> mitigation_tasks;
    if (!tech_mit_path.empty()) {
        technique_mitigations =
            load_mapping_set(tech_mit_path, corpus.catalogs, !global.lenient).set;
    }
    if (!mit_task_path.empty()) {
        mitigation_tasks = load_mapping_set(mit_task_path, corpus.catalogs, !global.lenient).set;
    }
    for (const MappingSet& set : corpus.setmap_sets) {
        if (!technique_mitigations && set.connects(kAttackSlug, kAttackSlug)) {
            technique_mitigations = set;
        } else if (!mitigation_tasks && set.connects(kAttackSlug, kPsscrmSlug)) {
            mitigation_tasks = set;
        }
    }
    if (!technique_mitigations || !mitigation_tasks) {
        throw ValidationError(
            "run-m3 needs a technique-mitigation set and a mitigation-task set "
            "(corpus setmaps/ or --tech-mit/--mit-task)");
    }
    emit_candidates(out_path, run_setmap(*technique_mitigations, *mitigation_tasks));
    return 0;
}

int run_m4(const GlobalArgs& global, const std::vector<std::string>& annotation_paths,
           const std::string& out_path) {
    Corpus corpus = load_required_corpus(global);
    std::vector<Annotation> annotations;
    if (annotation_paths.empty()) {
        annotations = corpus.annotations;
    } else {
        for (const std::string& path : annotation_paths) {
            std::vector<Annotation> more = load_annotations(path);
            annotations.insert(annotations.end(), std::make_move_iterator(more.begin()),
                               std::make_move_iterator(more.end()));
        }
    }
    if (annotations.empty()) {
        std::cerr << "warning: no annotations loaded, emitting zero candidates\n";
    }
    emit_candidates(out_path, run_report_strategy(annotations));
    return 0;
}

int run_triangulate(const GlobalArgs& global, const RunConfig& config,
                    const std::vector<std::string>& candidate_paths,
                    const std::string& universe_flag, int threshold_flag,
                    bool exclude_subtechniques, const std::string& out_dir,
                    std::string out_unique, std::string out_alpha, std::string out_consensus) {
    std::vector<CandidateMapping> candidates;
    std::uint64_t digest_seed = fnv1a64(canonical_config(config));
    for (const std::string& path : candidate_paths) {
        std::vector<CandidateMapping> more = read_candidates_file(path);
        std::ifstream in(path, std::ios::binary);
        std::ostringstream raw;
        raw << in.rdbuf();
        digest_seed = fnv1a64(std::filesystem::path(path).filename().string(), digest_seed);
        digest_seed = fnv1a64(raw.str(), digest_seed);
        candidates.insert(candidates.end(), std::make_move_iterator(more.begin()),
                          std::make_move_iterator(more.end()));
    }

    UniverseMode mode =
        universe_flag.empty() ? config.universe_mode : parse_universe_mode(universe_flag);
    int threshold = threshold_flag ? threshold_flag : config.consensus_threshold;

    std::vector<TriangulatedMapping> unique = dedupe(candidates);

    std::optional<Corpus> corpus;
    std::vector<std::pair<ItemId, ItemId>> universe;
    if (mode == UniverseMode::full_cross_product) {
        if (global.corpus_dir.empty()) {
            throw ValidationError(
                "full_cross_product universe needs --corpus DIR (or use --universe union)");
        }
        corpus = load_required_corpus(global);
        universe = item_pairs_universe(corpus->require_catalog(kAttackSlug),
                                       corpus->require_catalog(kPsscrmSlug),
                                       !exclude_subtechniques)
                       .distinct_pairs;
    } else if (!global.corpus_dir.empty()) {
        corpus = load_required_corpus(global);
    }

    AgreementMatrix matrix = build_agreement_matrix(unique, mode, universe);

    AlphaReport report;
    report.universe_mode = mode;
    report.unit_count = matrix.units.size();
    for (StrategyTag tag : kAllStrategies) {
        report.per_strategy_counts[std::string(to_string(tag))] = 0;
    }
    for (const CandidateMapping& candidate : candidates) {
        ++report.per_strategy_counts[std::string(to_string(candidate.strategy))];
    }
    report.pairwise = pairwise_agreement(matrix);
    try {
        report.alpha = krippendorff_alpha(matrix);
    } catch (const ValidationError& e) {
        report.error = e.what();
        std::cerr << "warning: " << e.what() << '\n';
    }

    digest_seed = fnv1a64(std::string(to_string(mode)), digest_seed);
    digest_seed = fnv1a64(std::to_string(threshold), digest_seed);
    Provenance provenance = corpus_provenance(corpus ? &*corpus : nullptr);
    provenance.digest = hex64(digest_seed);
    provenance.universe_mode = std::string(to_string(mode));

    std::filesystem::path dir(out_dir);
    if (out_unique.empty()) out_unique = (dir / "unique.tsv").string();
    if (out_alpha.empty()) out_alpha = (dir / "alpha.json").string();
    if (out_consensus.empty()) out_consensus = (dir / "consensus.tsv").string();

    std::vector<TriangulatedMapping> consensus = filter_by_consensus(unique, threshold);
    write_triangulated_file(out_unique, unique, provenance);
    write_alpha_json(out_alpha, report);
    write_triangulated_file(out_consensus, consensus, provenance);

    std::cerr << "unique mappings: " << unique.size() << ", consensus (k=" << threshold
              << "): " << consensus.size() << ", alpha: "
              << (report.alpha ? std::to_string(*report.alpha) : std::string("undefined"))
              << '\n';
    return 0;
}

int run_filter(const std::string& unique_path, int threshold, const std::string& out_path) {
    TriangulatedFile file = read_triangulated_file(unique_path);
    auto filtered = filter_by_consensus(file.mappings, threshold);
    std::ostringstream buffer;
    write_triangulated(buffer, filtered, file.provenance);
    emit(out_path, buffer.str());
    return 0;
}

std::string format_provenance(const Provenance& provenance) {
    std::string out;
    for (const auto& [slug, version] : provenance.corpus_versions) {
        out += slug + " " + version + ", ";
    }
    out += "digest " + (provenance.digest.empty() ? std::string("unknown") : provenance.digest);
    return out;
}

int run_query(const std::string& mapping_path, const std::string& technique,
              const std::string& task, bool rollup, const std::string& out_path) {
    TriangulatedFile file = read_triangulated_file(mapping_path);
    if (technique.empty() == task.empty()) {
        throw ValidationError("query needs exactly one of --technique or --task");
    }
    QueryResult result =
        technique.empty()
            ? query_by_task(file.mappings, file.provenance,
                            ItemId{std::string(kPsscrmSlug), task})
            : query_by_technique(file.mappings, file.provenance,
                                 ItemId{std::string(kAttackSlug), technique}, rollup);

    if (!result.warning.empty()) std::cerr << "warning: " << result.warning << '\n';

    std::ostringstream buffer;
    buffer << "subject: " << result.subject.str() << " (" << format_provenance(result.provenance)
           << ")\n";
    for (const QueryMatch& match : result.matches) {
        buffer << match.counterpart.local << "\tstrategies=";
        bool first = true;
        for (StrategyTag tag : match.strategies) {
            if (!first) buffer << ',';
            buffer << to_string(tag);
            first = false;
        }
        if (match.all_four) buffer << "\tall_four";
        if (match.inherited) buffer << "\tinherited";
        buffer << '\n';
        for (const std::string& summary : match.evidence_summaries) {
            buffer << "  - " << summary << '\n';
        }
    }
    emit(out_path, buffer.str());
    return 0;
}

int run_trace(const std::string& mapping_path, const std::string& technique,
              const std::string& task, const std::string& out_path) {
    TriangulatedFile file = read_triangulated_file(mapping_path);
    TraceResult trace = trace_pair(file.mappings, ItemId{std::string(kAttackSlug), technique},
                                   ItemId{std::string(kPsscrmSlug), task});
    if (!trace.found) {
        std::cerr << trace.text;
        return kExitData;
    }
    emit(out_path, trace.text);
    return 0;
}

int run_export(const GlobalArgs& global, const std::string& mapping_path,
               const std::string& format, const std::string& out_path) {
    TriangulatedFile file = read_triangulated_file(mapping_path);
    CatalogMap catalogs;
    if (!global.corpus_dir.empty()) {
        catalogs = load_required_corpus(global).catalogs;
    }
    emit(out_path, export_mappings(file.mappings, parse_export_format(format), catalogs));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"security framework crosswalk triangulation engine"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--corpus", global.corpus_dir, "corpus directory");
    app.add_option("--seed", global.seed, "rng seed for sampling")->default_val(0);
    app.add_option("--config", global.config_path, "json run configuration");
    app.add_flag("--lenient", global.lenient, "retain links to unknown items with warnings");

    auto* ingest = app.add_subcommand("ingest", "load and validate a corpus, print a summary");

    auto* paths = app.add_subcommand("paths", "enumerate retained framework paths");
    std::string paths_source{kAttackSlug};
    std::string paths_target{kPsscrmSlug};
    std::size_t paths_cutoff = 0;
    bool paths_all = false;
    std::string paths_out;
    paths->add_option("--source", paths_source, "source framework slug");
    paths->add_option("--target", paths_target, "target framework slug");
    paths->add_option("--cutoff", paths_cutoff, "max nodes per path (default from config)");
    paths->add_flag("--all", paths_all, "include pre-pruning paths");
    paths->add_option("--out", paths_out, "output file (default stdout)");

    auto* m1 = app.add_subcommand("run-m1", "transitive strategy over retained paths");
    std::string m1_out;
    m1->add_option("--out", m1_out, "candidate output file (default stdout)");

    auto* sample = app.add_subcommand("sample", "draw the stratified technique-task sample");
    std::uint64_t sample_size = 0;
    bool sample_subtech = false;
    std::string sample_out;
    sample->add_option("--size", sample_size, "total sample size (default from config)");
    sample->add_flag("--include-subtechniques", sample_subtech,
                     "stratify sub-techniques as pairable items");
    sample->add_option("--out", sample_out, "output file (default stdout)");

    auto* m2 = app.add_subcommand("run-m2", "pairwise judging strategy via a provider");
    std::string m2_pairs, m2_labels, m2_mode, m2_out;
    bool m2_sweep = false;
    m2->add_option("--pairs", m2_pairs, "pair list file (technique<TAB>task)");
    m2->add_flag("--sweep", m2_sweep, "judge the full technique-task universe");
    m2->add_option("--labels", m2_labels, "human label file for the agreement diagnostic");
    m2->add_option("--mode", m2_mode, "zero_shot or one_shot (default from config)");
    m2->add_option("--out", m2_out, "candidate output file (default stdout)");

    auto* m3 = app.add_subcommand("run-m3", "mitigation set-map strategy");
    std::string m3_tech_mit, m3_mit_task, m3_out;
    m3->add_option("--tech-mit", m3_tech_mit, "technique-mitigation mapping file");
    m3->add_option("--mit-task", m3_mit_task, "mitigation-task mapping file");
    m3->add_option("--out", m3_out, "candidate output file (default stdout)");

    auto* m4 = app.add_subcommand("run-m4", "report annotation strategy");
    std::vector<std::string> m4_annotations;
    std::string m4_out;
    m4->add_option("--annotations", m4_annotations, "annotation files (default corpus)");
    m4->add_option("--out", m4_out, "candidate output file (default stdout)");

    auto* triangulate = app.add_subcommand("triangulate",
                                           "dedupe candidates, compute agreement, filter");
    std::vector<std::string> tri_inputs;
    std::string tri_universe, tri_dir = ".", tri_unique, tri_alpha, tri_consensus;
    int tri_threshold = 0;
    bool tri_no_subtech = false;
    triangulate->add_option("candidates", tri_inputs, "candidate files from the strategies")
        ->required()
        ->expected(-1);
    triangulate->add_option("--universe", tri_universe,
                            "union_of_candidates or full_cross_product");
    triangulate->add_option("-k,--threshold", tri_threshold,
                            "consensus threshold (default from config)");
    triangulate->add_flag("--exclude-subtechniques", tri_no_subtech,
                          "drop sub-techniques from the full universe");
    triangulate->add_option("--out-dir", tri_dir, "directory for the three output files");
    triangulate->add_option("--out-unique", tri_unique, "unique mapping file path");
    triangulate->add_option("--out-alpha", tri_alpha, "alpha diagnostics path");
    triangulate->add_option("--out-consensus", tri_consensus, "consensus mapping file path");

    auto* filter = app.add_subcommand("filter", "re-filter a unique mapping file");
    std::string filter_input, filter_out;
    int filter_threshold = 3;
    filter->add_option("unique", filter_input, "unique mapping file")->required();
    filter->add_option("-k,--threshold", filter_threshold, "consensus threshold");
    filter->add_option("--out", filter_out, "output file (default stdout)");

    auto* query = app.add_subcommand("query", "look up mappings for one id");
    std::string query_input, query_technique, query_task, query_out;
    bool query_rollup = false;
    query->add_option("mappings", query_input, "triangulated mapping file")->required();
    query->add_option("--technique", query_technique, "attack technique id");
    query->add_option("--task", query_task, "psscrm task id");
    query->add_flag("--rollup", query_rollup,
                    "sub-technique queries also return parent-technique mappings");
    query->add_option("--out", query_out, "output file (default stdout)");

    auto* trace = app.add_subcommand("trace", "print the evidence bundle for one pair");
    std::string trace_input, trace_technique, trace_task, trace_out;
    trace->add_option("mappings", trace_input, "triangulated mapping file")->required();
    trace->add_option("--technique", trace_technique, "attack technique id")->required();
    trace->add_option("--task", trace_task, "psscrm task id")->required();
    trace->add_option("--out", trace_out, "output file (default stdout)");

    auto* exporter = app.add_subcommand("export", "render a mapping file for machine use");
    std::string export_input, export_format = "json", export_out;
    exporter->add_option("mappings", export_input, "triangulated mapping file")->required();
    exporter->add_option("--format", export_format, "json, csv, or markdown");
    exporter->add_option("--out", export_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        RunConfig config = effective_config(global);
        if (ingest->parsed()) return run_ingest(global);
        if (paths->parsed()) {
            return run_paths(global, config, paths_source, paths_target, paths_cutoff, paths_all,
                             paths_out);
        }
        if (m1->parsed()) return run_m1(global, config, m1_out);
        if (sample->parsed()) {
            return run_sample(global, config, sample_size, sample_subtech, sample_out);
        }
        if (m2->parsed()) {
            return run_m2(global, config, m2_pairs, m2_sweep, m2_labels, m2_mode, m2_out);
        }
        if (m3->parsed()) return run_m3(global, m3_tech_mit, m3_mit_task, m3_out);
        if (m4->parsed()) return run_m4(global, m4_annotations, m4_out);
        if (triangulate->parsed()) {
            return run_triangulate(global, config, tri_inputs, tri_universe, tri_threshold,
                                   tri_no_subtech, tri_dir, tri_unique, tri_alpha, tri_consensus);
        }
        if (filter->parsed()) return run_filter(filter_input, filter_threshold, filter_out);
        if (query->parsed()) {
            return run_query(query_input, query_technique, query_task, query_rollup, query_out);
        }
        if (trace->parsed()) return run_trace(trace_input, trace_technique, trace_task, trace_out);
        if (exporter->parsed()) {
            return run_export(global, export_input, export_format, export_out);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << '\n';
        return kExitProvider;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
