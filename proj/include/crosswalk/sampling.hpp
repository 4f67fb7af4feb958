#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "crosswalk/catalog.hpp"

namespace crosswalk {

// One (tactic, group) cell of the stratified sampling frame.
struct Stratum {
    ItemId tactic;
    ItemId group;
    std::uint64_t pair_count = 0;  // |techniques under tactic| x |tasks in group|
    std::uint64_t allocation = 0;  // sample quota, set by allocate_sample

    bool operator==(const Stratum&) const = default;
};

// One stratum per (tactic, group) with a non-zero pairing count, sorted by
// (tactic, group). Counts sum to the membership-based universe count.
std::vector<Stratum> build_strata(const Catalog& attack, const Catalog& psscrm,
                                  bool include_subtechniques = false);

// Proportional allocation with ceiling: quota = ceil(pair_count / total * n).
// Every stratum gets at least one draw; the grand total may exceed n.
std::vector<Stratum> allocate_sample(std::vector<Stratum> strata, std::uint64_t n);

struct SampleDraw {
    std::vector<std::pair<ItemId, ItemId>> pairs;
    std::vector<std::string> warnings;  // allocations clamped to stratum size
};

// Uniform draw without replacement inside each stratum. Fully deterministic:
// each stratum uses a std::mt19937_64 seeded from (seed, tactic, group) via
// FNV-1a/splitmix64, and bounds are applied by rejection, so samples reproduce
// across platforms. Pairs within a stratum come out in (technique, task)
// order; strata in (tactic, group) order.
SampleDraw draw_sample(const std::vector<Stratum>& strata, const Catalog& attack,
                       const Catalog& psscrm, std::uint64_t seed,
                       bool include_subtechniques = false);

// Unbiased integer in [0, n) by rejection sampling. n must be positive.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n);

// Stable per-stream seed derivation: FNV-1a over the seed and labels, then a
// splitmix64 finalizer.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view a, std::string_view b);

}  // namespace crosswalk
