#include "crosswalk/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "crosswalk/errors.hpp"

namespace crosswalk {

namespace {

void reject_unknown_keys(const nlohmann::json& object, const std::set<std::string>& known,
                         const std::string& origin, const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw ParseError(origin, 0, "unknown " + where + " key '" + key + "'");
        }
    }
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::string& origin,
                           const std::filesystem::path& base_dir) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin, 0, std::string("bad json: ") + e.what());
    }
    if (!root.is_object()) throw ParseError(origin, 0, "config must be a json object");

    RunConfig config;
    try {
        reject_unknown_keys(root,
                            {"cutoff", "m1_per_path_cap", "sample_size", "include_subtechniques",
                             "mode", "consensus_threshold", "universe_mode", "prompt", "provider"},
                            origin, "config");
        config.path_cutoff = root.value("cutoff", config.path_cutoff);
        config.m1_per_path_cap = root.value("m1_per_path_cap", config.m1_per_path_cap);
        config.sample_size = root.value("sample_size", config.sample_size);
        config.include_subtechniques =
            root.value("include_subtechniques", config.include_subtechniques);
        if (root.contains("mode")) {
            config.mode = parse_prompt_mode(root.at("mode").get<std::string>());
        }
        config.consensus_threshold = root.value("consensus_threshold", config.consensus_threshold);
        if (root.contains("universe_mode")) {
            config.universe_mode = parse_universe_mode(root.at("universe_mode").get<std::string>());
        }
        if (root.contains("prompt")) {
            const nlohmann::json& prompt = root.at("prompt");
            reject_unknown_keys(prompt, {"template", "one_shot_example"}, origin, "prompt");
            config.prompt.template_text = prompt.value("template", config.prompt.template_text);
            config.prompt.one_shot_example =
                prompt.value("one_shot_example", config.prompt.one_shot_example);
        }
        if (root.contains("provider")) {
            const nlohmann::json& provider = root.at("provider");
            reject_unknown_keys(provider,
                                {"type", "table", "endpoint", "model", "auth_token_env",
                                 "timeout_ms", "max_retries", "backoff_ms"},
                                origin, "provider");
            config.provider_type = provider.value("type", config.provider_type);
            if (config.provider_type != "stub" && config.provider_type != "http") {
                throw ParseError(origin, 0,
                                 "provider type must be stub or http, got '" +
                                     config.provider_type + "'");
            }
            if (provider.contains("table")) {
                std::filesystem::path table = provider.at("table").get<std::string>();
                config.stub_table = table.is_absolute() ? table : base_dir / table;
            }
            config.http.endpoint = provider.value("endpoint", config.http.endpoint);
            config.http.model = provider.value("model", config.http.model);
            config.http.auth_token_env =
                provider.value("auth_token_env", config.http.auth_token_env);
            config.http.timeout_ms = provider.value("timeout_ms", config.http.timeout_ms);
            config.judge.max_retries = provider.value("max_retries", config.judge.max_retries);
            config.judge.backoff_ms = provider.value("backoff_ms", config.judge.backoff_ms);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin, 0, std::string("bad config value: ") + e.what());
    } catch (const ValidationError& e) {
        throw ParseError(origin, 0, e.what());
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path.string(), path.parent_path());
}

std::string canonical_config(const RunConfig& config) {
    nlohmann::json out{
        {"cutoff", config.path_cutoff},
        {"m1_per_path_cap", config.m1_per_path_cap},
        {"sample_size", config.sample_size},
        {"include_subtechniques", config.include_subtechniques},
        {"mode", std::string(to_string(config.mode))},
        {"consensus_threshold", config.consensus_threshold},
        {"universe_mode", std::string(to_string(config.universe_mode))},
        {"prompt_template", config.prompt.template_text},
        {"one_shot_example", config.prompt.one_shot_example},
        {"provider_type", config.provider_type},
        {"model", config.http.model},
    };
    return out.dump();
}

}  // namespace crosswalk
