#pragma once

#include <cstdint>
#include <string_view>

namespace cbws {

// SplitMix64. Chosen over std::mt19937 because its output is fully specified
// here (no library-dependent distributions), which the byte-identical-report
// contract needs.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1, by rejection (no modulo bias).
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = ~0ull - (~0ull % n);
        for (;;) {
            uint64_t v = next();
            if (v < limit) return v % n;
        }
    }

    uint64_t range(uint64_t lo, uint64_t hi) { // inclusive bounds
        return lo + below(hi - lo + 1);
    }
};

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t mix64(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Every random decision in the artifact derives from one root seed through
// labeled streams: stream = f(seed, label, index). Labels keep independent
// subsystems decorrelated; indices enumerate trials/retries within a stream.
inline Rng derive_stream(uint64_t root_seed, std::string_view label, uint64_t index = 0) {
    uint64_t h = mix64(root_seed ^ 0x6a09e667f3bcc909ull);
    h = mix64(h ^ fnv1a64(label));
    h = mix64(h ^ (index * 0x9e3779b97f4a7c15ull + 0x3c6ef372fe94f82bull));
    return Rng(h);
}

} // namespace cbws
