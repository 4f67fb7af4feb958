#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "crosswalk/llm.hpp"
#include "crosswalk/triangulate.hpp"

namespace crosswalk {

// Engine-wide run configuration, loadable from a json file. Everything has a
// usable default so the config file is optional.
struct RunConfig {
    std::size_t path_cutoff = 10;               // nodes per simple path
    std::uint64_t m1_per_path_cap = 1'000'000;  // in-flight chain limit
    std::uint64_t sample_size = 150;
    bool include_subtechniques = false;
    PromptMode mode = PromptMode::zero_shot;
    int consensus_threshold = 3;
    UniverseMode universe_mode = UniverseMode::full_cross_product;

    PromptConfig prompt = PromptConfig::defaults();

    std::string provider_type = "stub";  // stub | http
    std::filesystem::path stub_table;    // resolved relative to the config file
    HttpProviderConfig http;
    JudgeOptions judge;
};

RunConfig parse_run_config(std::string_view text, const std::string& origin,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// Canonical textual form of the effective configuration; feeds the provenance
// digest so identical setups digest identically.
std::string canonical_config(const RunConfig& config);

}  // namespace crosswalk
