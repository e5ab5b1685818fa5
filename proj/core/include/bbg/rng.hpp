#pragma once

#include <cstdint>
#include <random>

namespace bbg {

// The pinned generator for the whole project. Reports record "mt19937_64"
// plus the 64-bit seed, which is enough to reproduce any run.
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

// splitmix64, used only to derive well-separated per-stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream `stream` of the run seeded by `seed`. Parallel
// Monte Carlo replicas use stream = trial index.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return Rng(mix_seed(mix_seed(seed) ^ mix_seed(stream + 1)));
}

}  // namespace bbg
