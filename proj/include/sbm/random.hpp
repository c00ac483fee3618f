#pragma once

#include <cstdint>
#include <random>

namespace sbm::rng {

using Engine = std::mt19937_64;

// Fixed stream ids so that every sampler draws from its own substream of
// the master seed. Experiments derive per-replica seeds with child_seed
// as well, keyed by replica index.
inline constexpr std::uint64_t kLabelStream  = 0x01;
inline constexpr std::uint64_t kEdgeStream   = 0x02;
inline constexpr std::uint64_t kRevealStream = 0x03;
inline constexpr std::uint64_t kTreeStream   = 0x04;
inline constexpr std::uint64_t kCenterStream = 0x05;
inline constexpr std::uint64_t kPoolStream   = 0x06;
inline constexpr std::uint64_t kOracleStream = 0x07;

// splitmix64 finalizer; decorrelates seed/stream pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream * 0xd6e8feb86659fd93ULL + 1));
}

inline Engine make_engine(std::uint64_t master, std::uint64_t stream) {
    return Engine(child_seed(master, stream));
}

} // namespace sbm::rng
