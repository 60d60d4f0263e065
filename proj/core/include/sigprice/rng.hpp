#pragma once

#include <cstdint>
#include <random>

namespace sigprice {

/// Deterministic substream derivation: replication k of a run seeded with
/// `seed` draws from make_stream(seed, k).  Substreams are independent
/// mt19937_64 engines keyed through splitmix64, so parallel replications
/// produce the same numbers regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

}  // namespace sigprice
