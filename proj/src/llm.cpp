#include "crosswalk/llm.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

constexpr std::string_view kDefaultTemplate =
    "You are assessing whether a software supply chain task mitigates an attack technique.\n"
    "Attack technique {technique_id}: {technique_title}\n"
    "Task {task_id}: {task_title}\n"
    "Consider whether performing the task reduces the risk of the attack technique in a\n"
    "bi-directionally supportive way.\n"
    "Answer with a single token on the first line: YES or NO.\n";

constexpr std::string_view kDefaultOneShotExample =
    "Example:\n"
    "Attack technique T1036: masquerading\n"
    "Task G.1.3: producing attestation\n"
    "Answer: YES\n";

void replace_all(std::string& text, std::string_view needle, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(PromptMode mode) {
    return mode == PromptMode::zero_shot ? "zero_shot" : "one_shot";
}

PromptMode parse_prompt_mode(std::string_view text) {
    if (text == "zero_shot") return PromptMode::zero_shot;
    if (text == "one_shot") return PromptMode::one_shot;
    throw ValidationError("unknown prompt mode '" + std::string(text) +
                          "' (expected zero_shot|one_shot)");
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::mapped: return "mapped";
        case Verdict::not_mapped: return "not_mapped";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

PromptConfig PromptConfig::defaults() {
    return PromptConfig{std::string(kDefaultTemplate), std::string(kDefaultOneShotExample)};
}

std::string render_prompt(const CatalogItem& technique, const CatalogItem& task, PromptMode mode,
                          const PromptConfig& config) {
    std::string body = config.template_text;
    replace_all(body, "{technique_id}", technique.id.local);
    replace_all(body, "{technique_title}", technique.title);
    replace_all(body, "{task_id}", task.id.local);
    replace_all(body, "{task_title}", task.title);
    if (mode == PromptMode::one_shot) {
        return config.one_shot_example + "\n" + body;
    }
    return body;
}

std::optional<bool> parse_binary_verdict(std::string_view response) {
    std::size_t start = 0;
    while (start <= response.size()) {
        std::size_t end = response.find('\n', start);
        std::string_view line = trim(
            end == std::string_view::npos ? response.substr(start)
                                          : response.substr(start, end - start));
        if (!line.empty()) {
            std::size_t space = line.find_first_of(" \t");
            std::string_view token = space == std::string_view::npos ? line : line.substr(0, space);
            std::string lowered(token);
            std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (lowered == "yes") return true;
            if (lowered == "no") return false;
            return std::nullopt;
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return std::nullopt;
}

StubProvider StubProvider::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw ParseError(path.string(), line_no,
                             "expected 'technique<TAB>task<TAB>response'");
        }
        table[{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)}] = line.substr(t2 + 1);
    }
    return StubProvider(std::move(table));
}

std::string StubProvider::complete(const ProviderRequest& request) {
    auto it = table_.find({request.technique.local, request.task.local});
    if (it == table_.end()) {
        throw ProviderError("stub table has no entry for (" + request.technique.local + ", " +
                            request.task.local + ")");
    }
    return it->second;
}

std::string HttpProvider::complete(const ProviderRequest& request) {
    std::string_view endpoint = config_.endpoint;
    if (!endpoint.starts_with("http://")) {
        throw ProviderError("unsupported endpoint '" + config_.endpoint +
                            "' (only http:// is built in)");
    }
    std::size_t path_pos = endpoint.find('/', 7);
    std::string base(path_pos == std::string_view::npos ? endpoint : endpoint.substr(0, path_pos));
    std::string path(path_pos == std::string_view::npos ? "/" : endpoint.substr(path_pos));

    httplib::Client client(base);
    client.set_connection_timeout(0, config_.timeout_ms * 1000);
    client.set_read_timeout(0, config_.timeout_ms * 1000);

    httplib::Headers headers;
    if (!config_.auth_token_env.empty()) {
        const char* token = std::getenv(config_.auth_token_env.c_str());
        if (!token) {
            throw ProviderError("auth token environment variable '" + config_.auth_token_env +
                                "' is not set");
        }
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    nlohmann::json payload{{"model", config_.model}, {"prompt", request.prompt}};
    auto result = client.Post(path, headers, payload.dump(), "application/json");
    if (!result) {
        throw ProviderError("transport failure calling " + config_.endpoint + ": " +
                            httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw ProviderError("endpoint " + config_.endpoint + " returned status " +
                            std::to_string(result->status));
    }
    try {
        nlohmann::json body = nlohmann::json::parse(result->body);
        return body.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed endpoint response: ") + e.what());
    }
}

PairVerdict judge_pair(CompletionProvider& provider, const CatalogItem& technique,
                       const CatalogItem& task, PromptMode mode, const PromptConfig& prompt,
                       const JudgeOptions& options) {
    PairVerdict verdict;
    verdict.technique = technique.id;
    verdict.task = task.id;
    verdict.mode = mode;
    verdict.prompt = render_prompt(technique, task, mode, prompt);

    int backoff = options.backoff_ms;
    for (int attempt = 0;; ++attempt) {
        std::string response;
        try {
            response = provider.complete({technique.id, task.id, verdict.prompt});
        } catch (const ProviderError&) {
            if (attempt >= options.max_retries) throw;
            if (backoff > 0) std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
            continue;
        }
        verdict.response = response;
        if (auto parsed = parse_binary_verdict(response)) {
            verdict.verdict = *parsed ? Verdict::mapped : Verdict::not_mapped;
            return verdict;
        }
        if (attempt >= options.max_retries) {
            verdict.verdict = Verdict::undecided;
            return verdict;
        }
    }
}

LlmRun run_llm_strategy(std::span<const std::pair<ItemId, ItemId>> pairs, const Catalog& attack,
                        const Catalog& psscrm, CompletionProvider& provider, PromptMode mode,
                        const PromptConfig& prompt, const JudgeOptions& options) {
    std::vector<std::pair<ItemId, ItemId>> distinct(pairs.begin(), pairs.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    LlmRun run;
    for (const auto& [technique_id, task_id] : distinct) {
        const CatalogItem* technique = attack.find(technique_id.local);
        const CatalogItem* task = psscrm.find(task_id.local);
        if (!technique || !task) {
            throw ValidationError("pair (" + technique_id.local + ", " + task_id.local +
                                  ") does not resolve in the catalogs");
        }
        PairVerdict verdict = judge_pair(provider, *technique, *task, mode, prompt, options);
        if (verdict.verdict == Verdict::mapped) {
            run.candidates.push_back(CandidateMapping{
                technique_id, task_id, StrategyTag::m2_llm,
                nlohmann::json{{"mode", to_string(mode)},
                               {"prompt", verdict.prompt},
                               {"response", verdict.response}}});
        }
        run.verdicts.push_back(std::move(verdict));
    }
    return run;
}

double agreement_rate(std::span<const PairVerdict> verdicts, std::span<const HumanLabel> labels) {
    if (labels.empty()) throw ValidationError("agreement rate needs at least one human label");
    std::map<std::pair<ItemId, ItemId>, Verdict> by_pair;
    for (const PairVerdict& verdict : verdicts) {
        by_pair[{verdict.technique, verdict.task}] = verdict.verdict;
    }
    std::size_t equal = 0;
    for (const HumanLabel& label : labels) {
        auto it = by_pair.find({label.technique, label.task});
        if (it == by_pair.end() || it->second == Verdict::undecided) {
            throw ValidationError("no verdict for labeled pair (" + label.technique.local + ", " +
                                  label.task.local + ")");
        }
        bool mapped = it->second == Verdict::mapped;
        if (mapped == label.mapped) ++equal;
    }
    return static_cast<double>(equal) / static_cast<double>(labels.size());
}

std::vector<HumanLabel> load_human_labels(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::vector<HumanLabel> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw ParseError(path.string(), line_no, "expected 'technique<TAB>task<TAB>yes|no'");
        }
        std::string token = line.substr(t2 + 1);
        bool mapped;
        if (token == "yes") {
            mapped = true;
        } else if (token == "no") {
            mapped = false;
        } else {
            throw ParseError(path.string(), line_no, "label must be yes or no");
        }
        labels.push_back(HumanLabel{ItemId{std::string(kAttackSlug), line.substr(0, t1)},
                                    ItemId{std::string(kPsscrmSlug),
                                           line.substr(t1 + 1, t2 - t1 - 1)},
                                    mapped});
    }
    return labels;
}

}  // namespace crosswalk
