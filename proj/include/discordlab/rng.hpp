// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "discordlab/qstate.hpp"

namespace discordlab {

/// splitmix64: tiny counter-style generator. Each (seed, index) pair opens an
/// independent stream, so sampling is reproducible regardless of how work is
/// split across threads.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}
    SplitMix64(std::uint64_t seed, std::uint64_t index)
        : state(scramble(seed ^ (index * 0x9e3779b97f4a7c15ull) ^ 0x6a09e667f3bcc909ull)) {}

    static std::uint64_t scramble(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform in [-1, 1]
    double next_symmetric() { return 2.0 * next_double() - 1.0; }
};

/// Uniform sample from the physical tetrahedron by rejection from the cube
/// (acceptance ratio 1/3). Deterministic per (seed, index).
inline CorrelationVector sample_tetrahedron(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng(seed, index);
    for (;;) {
        CorrelationVector c(rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric());
        if (is_physical(c)) return c;
    }
}

}  // namespace discordlab
