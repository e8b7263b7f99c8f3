#include "seneca/rng.hpp"

namespace seneca {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t stream_seed(const StreamKey& key) noexcept {
    std::uint64_t h = splitmix64(key.master_seed);
    h = splitmix64(h ^ fnv1a64(key.family));
    h = splitmix64(h ^ key.support);
    h = splitmix64(h ^ key.index);
    h = splitmix64(h ^ fnv1a64(key.purpose));
    return h;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    __extension__ using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace seneca
