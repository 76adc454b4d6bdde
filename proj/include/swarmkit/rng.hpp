#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarm {

// splitmix64 finalizer; bijective, good avalanche.  Used to derive independent
// streams from (base seed, index) so trial results never depend on scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

// FNV-1a, used to key named substreams and to fingerprint configs.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return combine_seed(base_seed, trial_index);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(mix64(seed));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::string_view stream) {
  return std::mt19937_64(combine_seed(seed, fnv1a(stream)));
}

}  // namespace swarm
