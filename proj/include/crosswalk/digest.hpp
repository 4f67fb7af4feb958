#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace crosswalk {

// FNV-1a, 64 bit. Chainable: feed the previous hash back in as the seed.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 1469598103934665603ULL) {
    std::uint64_t h = seed;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t value) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = kDigits[value & 0xf];
        value >>= 4;
    }
    return out;
}

}  // namespace crosswalk
