#include <doctest.h>

#include "crosswalk/corpus.hpp"
#include "crosswalk/errors.hpp"
#include "crosswalk/llm.hpp"
#include "testutil.hpp"

using namespace crosswalk;

namespace {

CatalogItem item(const std::string& framework, const std::string& local,
                 const std::string& title, ItemLevel level) {
    return CatalogItem{ItemId{framework, local}, title, level, {}};
}

const CatalogItem kMasquerading =
    item("attack", "T1036", "masquerading", ItemLevel::technique);
const CatalogItem kAttestation =
    item("psscrm", "G.1.3", "producing attestation", ItemLevel::task);

// Counts calls; optionally fails the first k attempts.
class FlakyProvider final : public CompletionProvider {
public:
    FlakyProvider(std::string response, int failures)
        : response_(std::move(response)), failures_(failures) {}

    std::string complete(const ProviderRequest&) override {
        ++calls_;
        if (calls_ <= failures_) throw ProviderError("synthetic outage");
        return response_;
    }
    std::string describe() const override { return "flaky"; }

    int calls() const { return calls_; }

private:
    std::string response_;
    int failures_ = 0;
    int calls_ = 0;
};

JudgeOptions fast_judge() {
    JudgeOptions options;
    options.max_retries = 2;
    options.backoff_ms = 0;
    return options;
}

}  // namespace

TEST_CASE("render_prompt embeds both items and is byte-stable") {
    PromptConfig config = PromptConfig::defaults();
    std::string prompt = render_prompt(kMasquerading, kAttestation, PromptMode::zero_shot, config);
    CHECK(prompt.find("T1036") != std::string::npos);
    CHECK(prompt.find("masquerading") != std::string::npos);
    CHECK(prompt.find("G.1.3") != std::string::npos);
    CHECK(prompt.find("producing attestation") != std::string::npos);
    CHECK(prompt.find("YES or NO") != std::string::npos);
    CHECK(prompt ==
          render_prompt(kMasquerading, kAttestation, PromptMode::zero_shot, config));
}

TEST_CASE("one_shot mode prepends exactly the configured example") {
    PromptConfig config = PromptConfig::defaults();
    config.one_shot_example = "Worked example goes here.";
    std::string zero = render_prompt(kMasquerading, kAttestation, PromptMode::zero_shot, config);
    std::string one = render_prompt(kMasquerading, kAttestation, PromptMode::one_shot, config);
    CHECK(one == config.one_shot_example + "\n" + zero);
}

TEST_CASE("parse_binary_verdict accepts only a leading yes/no token") {
    CHECK(parse_binary_verdict("YES") == true);
    CHECK(parse_binary_verdict("yes\nbecause reasons") == true);
    CHECK(parse_binary_verdict("\n\n  No idea") == false);
    CHECK(parse_binary_verdict("Yes the task helps") == true);

    CHECK_FALSE(parse_binary_verdict("maybe").has_value());
    CHECK_FALSE(parse_binary_verdict("").has_value());
    CHECK_FALSE(parse_binary_verdict("YES.").has_value());
    CHECK_FALSE(parse_binary_verdict("the answer is YES").has_value());
}

TEST_CASE("judge_pair with the fixture stub table") {
    StubProvider stub = StubProvider::from_file(testutil::data_dir() / "stub_table.tsv");
    PromptConfig config = PromptConfig::defaults();

    SUBCASE("yes maps") {
        PairVerdict verdict =
            judge_pair(stub, kMasquerading, kAttestation, PromptMode::zero_shot, config,
                       fast_judge());
        CHECK(verdict.verdict == Verdict::mapped);
        CHECK(verdict.response == "YES");
        CHECK(verdict.prompt ==
              render_prompt(kMasquerading, kAttestation, PromptMode::zero_shot, config));
    }
    SUBCASE("no emits no candidate") {
        CatalogItem technique = item("attack", "T1078", "valid accounts", ItemLevel::technique);
        CatalogItem task = item("psscrm", "P.5.2", "updating your dependencies", ItemLevel::task);
        PairVerdict verdict =
            judge_pair(stub, technique, task, PromptMode::zero_shot, config, fast_judge());
        CHECK(verdict.verdict == Verdict::not_mapped);
    }
    SUBCASE("unparseable answers go undecided after the retries") {
        CatalogItem task = item("psscrm", "P.3.3", "requiring signed commits", ItemLevel::task);
        PairVerdict verdict =
            judge_pair(stub, kMasquerading, task, PromptMode::zero_shot, config, fast_judge());
        CHECK(verdict.verdict == Verdict::undecided);
        CHECK(verdict.response == "maybe");
    }
    SUBCASE("missing stub entries surface as provider errors") {
        CatalogItem task = item("psscrm", "E.3.2", "environmental separation", ItemLevel::task);
        CHECK_THROWS_AS(
            judge_pair(stub, kMasquerading, task, PromptMode::zero_shot, config, fast_judge()),
            ProviderError);
    }
}

TEST_CASE("judge_pair retries transport failures with bounded backoff") {
    PromptConfig config = PromptConfig::defaults();
    SUBCASE("recovers when the outage clears") {
        FlakyProvider provider("YES", 2);
        PairVerdict verdict = judge_pair(provider, kMasquerading, kAttestation,
                                         PromptMode::zero_shot, config, fast_judge());
        CHECK(verdict.verdict == Verdict::mapped);
        CHECK(provider.calls() == 3);
    }
    SUBCASE("rethrows after the retry budget") {
        FlakyProvider provider("YES", 100);
        CHECK_THROWS_AS(judge_pair(provider, kMasquerading, kAttestation, PromptMode::zero_shot,
                                   config, fast_judge()),
                        ProviderError);
        CHECK(provider.calls() == 3);  // initial try + 2 retries
    }
}

TEST_CASE("run_llm_strategy is a pure function of its inputs") {
    Corpus corpus = load_corpus(testutil::corpus_dir());
    const Catalog& attack = corpus.require_catalog("attack");
    const Catalog& psscrm = corpus.require_catalog("psscrm");
    StubProvider stub = StubProvider::from_file(testutil::data_dir() / "stub_table.tsv");
    PromptConfig config = PromptConfig::defaults();

    std::vector<std::pair<ItemId, ItemId>> pairs{
        {ItemId{"attack", "T1036"}, ItemId{"psscrm", "G.1.3"}},
        {ItemId{"attack", "T1078"}, ItemId{"psscrm", "P.5.2"}},
        {ItemId{"attack", "T1036"}, ItemId{"psscrm", "P.3.3"}},
        {ItemId{"attack", "T1036"}, ItemId{"psscrm", "G.1.3"}},  // duplicate collapses
    };

    LlmRun first =
        run_llm_strategy(pairs, attack, psscrm, stub, PromptMode::zero_shot, config, fast_judge());
    CHECK(first.verdicts.size() == 3);
    REQUIRE(first.candidates.size() == 1);
    CHECK(first.candidates[0].technique.local == "T1036");
    CHECK(first.candidates[0].task.local == "G.1.3");
    CHECK(first.candidates[0].evidence.at("mode") == "zero_shot");

    std::reverse(pairs.begin(), pairs.end());
    LlmRun second =
        run_llm_strategy(pairs, attack, psscrm, stub, PromptMode::zero_shot, config, fast_judge());
    CHECK(first.candidates == second.candidates);

    std::vector<std::pair<ItemId, ItemId>> unknown{
        {ItemId{"attack", "T9999"}, ItemId{"psscrm", "G.1.3"}}};
    CHECK_THROWS_AS(run_llm_strategy(unknown, attack, psscrm, stub, PromptMode::zero_shot, config,
                                     fast_judge()),
                    ValidationError);
}

TEST_CASE("agreement_rate") {
    auto verdict_of = [](const std::string& technique, const std::string& task, Verdict v) {
        PairVerdict verdict;
        verdict.technique = ItemId{"attack", technique};
        verdict.task = ItemId{"psscrm", task};
        verdict.verdict = v;
        return verdict;
    };
    auto label_of = [](const std::string& technique, const std::string& task, bool mapped) {
        return HumanLabel{ItemId{"attack", technique}, ItemId{"psscrm", task}, mapped};
    };

    SUBCASE("identical labels give 1.0") {
        std::vector<PairVerdict> verdicts{verdict_of("T1036", "G.1.3", Verdict::mapped),
                                          verdict_of("T1078", "P.5.2", Verdict::not_mapped)};
        std::vector<HumanLabel> labels{label_of("T1036", "G.1.3", true),
                                       label_of("T1078", "P.5.2", false)};
        CHECK(agreement_rate(verdicts, labels) == 1.0);
    }
    SUBCASE("123 of 150 equal gives 0.82") {
        std::vector<PairVerdict> verdicts;
        std::vector<HumanLabel> labels;
        for (int i = 0; i < 150; ++i) {
            std::string task = "P.1." + std::to_string(i + 1);
            verdicts.push_back(verdict_of("T1036", task, Verdict::mapped));
            labels.push_back(label_of("T1036", task, i < 123));
        }
        CHECK(agreement_rate(verdicts, labels) == doctest::Approx(0.82));
    }
    SUBCASE("2 of 4 equal gives 0.5") {
        std::vector<PairVerdict> verdicts{verdict_of("T1036", "G.1.1", Verdict::mapped),
                                          verdict_of("T1036", "G.1.2", Verdict::mapped),
                                          verdict_of("T1036", "G.1.3", Verdict::not_mapped),
                                          verdict_of("T1036", "G.1.4", Verdict::not_mapped)};
        std::vector<HumanLabel> labels{label_of("T1036", "G.1.1", true),
                                       label_of("T1036", "G.1.2", false),
                                       label_of("T1036", "G.1.3", true),
                                       label_of("T1036", "G.1.4", false)};
        CHECK(agreement_rate(verdicts, labels) == doctest::Approx(0.5));
    }
    SUBCASE("a labeled pair without a decided verdict is an error") {
        std::vector<PairVerdict> verdicts{verdict_of("T1036", "G.1.3", Verdict::undecided)};
        std::vector<HumanLabel> labels{label_of("T1036", "G.1.3", true)};
        CHECK_THROWS_AS(agreement_rate(verdicts, labels), ValidationError);
        CHECK_THROWS_AS(agreement_rate({}, labels), ValidationError);
    }
}
