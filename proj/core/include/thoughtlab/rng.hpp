#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace thoughtlab {

// All randomness in the project flows through this header. Streams are
// derived by name so that every random draw is replayable from one global
// seed, and the counter-based helpers give the same value for the same key
// regardless of evaluation order or thread layout.

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless mix of a single word.
inline uint64_t mix64(uint64_t x) {
    uint64_t s = x;
    return splitmix64(s);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Named-stream derivation: hash(global seed, phase name). The CLI documents
// this as the provenance rule for every phase seed.
inline uint64_t derive_seed(uint64_t seed, std::string_view name) {
    uint64_t s = seed ^ fnv1a64(name);
    return splitmix64(s);
}

inline uint64_t derive_seed(uint64_t seed, std::string_view name, uint64_t index) {
    uint64_t s = (seed ^ fnv1a64(name)) + 0x9e3779b97f4a7c15ULL * (index + 1);
    return splitmix64(s);
}

// Sequential generator (splitmix64 stream). Not cryptographic; chosen for
// portability: the sequence is fully defined by this file, no libstdc++
// distribution internals involved.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) {
        if (n == 0) return 0;
        uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller. No spare caching: two uniforms per
    // draw keeps the call sequence trivially replayable.
    double normal() {
        double u1 = uniform_double();
        double u2 = uniform_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    uint64_t state_;
};

// Counter-based standard normal keyed by (seed, position, channel). Used for
// embedding noise so the same payload seed produces the same noise value at a
// given coordinate no matter how the batch is laid out.
inline double keyed_normal(uint64_t seed, uint64_t position, uint64_t channel) {
    uint64_t key = seed;
    key = mix64(key ^ (position * 0xd6e8feb86659fd93ULL + 1));
    key = mix64(key ^ (channel * 0xa3b195354a39b70dULL + 1));
    uint64_t s = key;
    uint64_t a = splitmix64(s);
    uint64_t b = splitmix64(s);
    double u1 = static_cast<double>(a >> 11) * 0x1.0p-53;
    double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace thoughtlab
