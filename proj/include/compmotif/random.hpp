#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace compmotif {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; turns structured seeds (seed ^ index) into well-mixed ones.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream for sub-task `index` of a run seeded with `seed`.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t index)
{
    return Rng(mix_seed(seed ^ mix_seed(index)));
}

/// FNV-1a; stable across platforms, used to key per-motif streams.
constexpr std::uint64_t stable_hash(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace compmotif
