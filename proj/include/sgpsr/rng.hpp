#pragma once

#include <cstdint>
#include <random>

namespace sgpsr {

using Rng = std::mt19937_64;

/// Independent purposes draw from independent streams, so e.g. the protocol
/// under test never perturbs node trajectories for a given seed.
enum class Stream : std::uint64_t { Setup = 0, Mobility = 1, Beacon = 2, Adversary = 3 };

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
{
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ (static_cast<std::uint64_t>(stream) * 0x632be59bd9b4e019ULL));
    const std::uint64_t c = splitmix64(b ^ (index + 0x8cb92ba72f3d8dd7ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi)
{
    if (lo == hi)
        return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace sgpsr
