#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace sidon {

/// Resource guards shared by the enumeration-heavy operations.
struct Limits {
    std::uint64_t max_enumeration = 10'000'000;
    std::uint64_t max_field_order = std::uint64_t{1} << 20;
};

// Reads SIDON_LATTICE_MAX_ENUM once; later calls return the cached value.
inline const Limits& default_limits() {
    static const Limits limits = [] {
        Limits l;
        if (const char* env = std::getenv("SIDON_LATTICE_MAX_ENUM")) {
            try {
                l.max_enumeration = std::stoull(env);
            } catch (...) {
            }
        }
        return l;
    }();
    return limits;
}

} // namespace sidon
