#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace pcg {

// splitmix64 finalizer. Also used to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a root seed, a component tag and
// optional indices. All randomness in the project flows from a single root
// seed through this function; there is no global RNG.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {});

// xoshiro256++ seeded via splitmix64. Self-contained so that results are
// bit-identical across standard libraries and platforms
// (std::uniform_int_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform integer in [0, bound). bound must be >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53-bit resolution.
    double next_double();

private:
    std::uint64_t s_[4];
};

}  // namespace pcg
