#pragma once

#include <cstdint>

namespace pathgen {

// Stateless 64-bit finalizer (murmur3 fmix64). Stable across releases:
// serialized seeds and replay files depend on it.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

// splitmix64. Small, fast, and good enough for input sampling; not for
// cryptography.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, n), n >= 1, by 128-bit multiply-shift. Bias is n/2^64,
    // far below anything observable at desk-scale domains.
    std::int64_t below(std::int64_t n) {
        return static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(next()) * static_cast<std::uint64_t>(n)) >> 64);
    }

private:
    std::uint64_t state_;
};

// Stream seed for input `index` of step `k`. Every input owns an
// independent stream derived from (seed, k, index) alone, so any worker
// may draw any input and the result never depends on the worker count.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ k) ^ index);
}

}  // namespace pathgen
