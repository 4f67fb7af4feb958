#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "crosswalk/errors.hpp"
#include "crosswalk/llm.hpp"

using namespace crosswalk;

namespace {

struct LocalEndpoint {
    httplib::Server server;
    std::thread worker;
    int port = 0;

    LocalEndpoint() {
        server.Post("/v1/complete", [](const httplib::Request& request,
                                       httplib::Response& response) {
            nlohmann::json body = nlohmann::json::parse(request.body);
            std::string prompt = body.at("prompt").get<std::string>();
            std::string text = prompt.find("masquerading") != std::string::npos ? "YES" : "NO";
            response.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
        });
        server.Post("/broken", [](const httplib::Request&, httplib::Response& response) {
            response.status = 500;
        });
        server.Post("/garbled", [](const httplib::Request&, httplib::Response& response) {
            response.set_content("not json", "text/plain");
        });
        port = server.bind_to_any_port("127.0.0.1");
        worker = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~LocalEndpoint() {
        server.stop();
        worker.join();
    }

    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

CatalogItem item(const std::string& framework, const std::string& local,
                 const std::string& title, ItemLevel level) {
    return CatalogItem{ItemId{framework, local}, title, level, {}};
}

}  // namespace

TEST_CASE("HttpProvider against a local endpoint") {
    LocalEndpoint endpoint;
    CatalogItem technique = item("attack", "T1036", "masquerading", ItemLevel::technique);
    CatalogItem other = item("attack", "T1078", "valid accounts", ItemLevel::technique);
    CatalogItem task = item("psscrm", "G.1.3", "producing attestation", ItemLevel::task);
    PromptConfig prompt = PromptConfig::defaults();
    JudgeOptions options;
    options.max_retries = 0;
    options.backoff_ms = 0;

    SUBCASE("well-formed responses parse into verdicts") {
        HttpProvider provider({endpoint.url("/v1/complete"), "test-model", "", 2000});
        PairVerdict mapped =
            judge_pair(provider, technique, task, PromptMode::zero_shot, prompt, options);
        CHECK(mapped.verdict == Verdict::mapped);
        PairVerdict not_mapped =
            judge_pair(provider, other, task, PromptMode::zero_shot, prompt, options);
        CHECK(not_mapped.verdict == Verdict::not_mapped);
    }
    SUBCASE("non-200 statuses are provider errors") {
        HttpProvider provider({endpoint.url("/broken"), "test-model", "", 2000});
        CHECK_THROWS_AS(provider.complete({technique.id, task.id, "p"}), ProviderError);
    }
    SUBCASE("malformed payloads are provider errors") {
        HttpProvider provider({endpoint.url("/garbled"), "test-model", "", 2000});
        CHECK_THROWS_AS(provider.complete({technique.id, task.id, "p"}), ProviderError);
    }
    SUBCASE("unreachable endpoints are provider errors") {
        HttpProvider provider({"http://127.0.0.1:1/nothing", "test-model", "", 300});
        CHECK_THROWS_AS(provider.complete({technique.id, task.id, "p"}), ProviderError);
    }
    SUBCASE("missing auth token environment variable fails before the call") {
        HttpProvider provider(
            {endpoint.url("/v1/complete"), "test-model", "CROSSWALK_NO_SUCH_TOKEN", 2000});
        CHECK_THROWS_AS(provider.complete({technique.id, task.id, "p"}), ProviderError);
    }
    SUBCASE("non-http schemes are rejected") {
        HttpProvider provider({"https://example.invalid/v1", "test-model", "", 2000});
        CHECK_THROWS_AS(provider.complete({technique.id, task.id, "p"}), ProviderError);
    }
}
