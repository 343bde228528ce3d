#include "pcg/rng.hpp"

#include <cassert>

namespace pcg {

std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = mix64(root ^ 0x7063676c61623031ull);  // "pcglab01"
    for (unsigned char c : tag) {
        h = mix64(h ^ c);
    }
    for (std::uint64_t v : indices) {
        h = mix64(h ^ v);
    }
    return h;
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        w = z ^ (z >> 31);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) {
        s_[0] = 1;  // all-zero state is a fixed point of xoshiro
    }
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
}  // namespace

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    assert(bound >= 1);
    // Lemire's nearly-divisionless unbiased method.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t t = (0 - bound) % bound;
        while (lo < t) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace pcg
