#pragma once

// Seeded random streams.
//
// Every stochastic step draws from its own std::mt19937_64 whose seed is
// derived from a key (master seed, family label, support size, index,
// purpose). The derivation is fixed so golden outputs are portable:
//
//   h  = splitmix64(master)
//   h  = splitmix64(h ^ fnv1a64(family))
//   h  = splitmix64(h ^ support)
//   h  = splitmix64(h ^ index)
//   h  = splitmix64(h ^ fnv1a64(purpose))
//
// splitmix64(x) is the SplitMix64 output function applied to
// x + 0x9e3779b97f4a7c15; fnv1a64 is 64-bit FNV-1a over the UTF-8 bytes.

#include <cstdint>
#include <random>
#include <string_view>

namespace seneca {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

struct StreamKey {
    std::uint64_t master_seed = 0;
    std::string_view family;
    std::uint64_t support = 0;
    std::uint64_t index = 0;
    std::string_view purpose;
};

std::uint64_t stream_seed(const StreamKey& key) noexcept;

inline Rng make_stream(const StreamKey& key) { return Rng(stream_seed(key)); }

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound);

}  // namespace seneca
