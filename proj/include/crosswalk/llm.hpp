#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crosswalk/catalog.hpp"
#include "crosswalk/strategy.hpp"

namespace crosswalk {

enum class PromptMode { zero_shot, one_shot };

std::string_view to_string(PromptMode mode);
PromptMode parse_prompt_mode(std::string_view text);

// Prompt text lives in config; the engine only guarantees the structural
// contract: both items' ids and titles are embedded, the instruction demands a
// single YES/NO token, and one_shot prepends exactly one worked example.
struct PromptConfig {
    std::string template_text;     // placeholders: {technique_id} {technique_title}
                                   //               {task_id} {task_title}
    std::string one_shot_example;  // block prepended verbatim in one_shot mode

    static PromptConfig defaults();
};

std::string render_prompt(const CatalogItem& technique, const CatalogItem& task, PromptMode mode,
                          const PromptConfig& config);

enum class Verdict { mapped, not_mapped, undecided };

std::string_view to_string(Verdict verdict);

struct PairVerdict {
    ItemId technique;
    ItemId task;
    Verdict verdict = Verdict::undecided;
    std::string prompt;    // transcript, stored verbatim
    std::string response;  // last raw response
    PromptMode mode = PromptMode::zero_shot;
};

// Leading YES/NO token (case-insensitive) on the first non-empty line;
// anything else is a parse failure.
std::optional<bool> parse_binary_verdict(std::string_view response);

struct ProviderRequest {
    ItemId technique;
    ItemId task;
    std::string prompt;
};

// Text-completion endpoint abstraction. Throws ProviderError on transport
// failure.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual std::string complete(const ProviderRequest& request) = 0;
    virtual std::string describe() const = 0;
};

// Deterministic provider keyed by (technique, task); the response text comes
// from a table file: technique<TAB>task<TAB>response per line.
class StubProvider final : public CompletionProvider {
public:
    using Table = std::map<std::pair<std::string, std::string>, std::string>;

    explicit StubProvider(Table table) : table_(std::move(table)) {}
    static StubProvider from_file(const std::filesystem::path& path);

    std::string complete(const ProviderRequest& request) override;
    std::string describe() const override { return "stub"; }

private:
    Table table_;
};

struct HttpProviderConfig {
    std::string endpoint;  // http://host[:port]/path
    std::string model;
    std::string auth_token_env;  // environment variable holding the bearer token
    int timeout_ms = 30000;
};

// POSTs {"model": ..., "prompt": ...} and reads {"text": ...} back.
class HttpProvider final : public CompletionProvider {
public:
    explicit HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {}

    std::string complete(const ProviderRequest& request) override;
    std::string describe() const override { return "http:" + config_.model; }

private:
    HttpProviderConfig config_;
};

struct JudgeOptions {
    int max_retries = 3;  // additional attempts after the first
    int backoff_ms = 250; // doubles per transport retry
};

// One pair at a time. Transport failures retry with bounded backoff and
// rethrow once exhausted; unparseable responses retry and then come back
// undecided.
PairVerdict judge_pair(CompletionProvider& provider, const CatalogItem& technique,
                       const CatalogItem& task, PromptMode mode, const PromptConfig& prompt,
                       const JudgeOptions& options = {});

struct LlmRun {
    std::vector<CandidateMapping> candidates;  // mapped verdicts, sorted by pair
    std::vector<PairVerdict> verdicts;         // every judged pair, sorted by pair
};

// Judges each distinct pair once. Items must resolve in the catalogs.
LlmRun run_llm_strategy(std::span<const std::pair<ItemId, ItemId>> pairs, const Catalog& attack,
                        const Catalog& psscrm, CompletionProvider& provider, PromptMode mode,
                        const PromptConfig& prompt, const JudgeOptions& options = {});

struct HumanLabel {
    ItemId technique;
    ItemId task;
    bool mapped = false;
};

// Fraction of labeled pairs whose verdict equals the human label. Every
// labeled pair must have a decided verdict.
double agreement_rate(std::span<const PairVerdict> verdicts, std::span<const HumanLabel> labels);

// Label file: technique<TAB>task<TAB>yes|no per line, '#' lines ignored.
std::vector<HumanLabel> load_human_labels(const std::filesystem::path& path);

}  // namespace crosswalk
