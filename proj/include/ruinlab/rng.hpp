#pragma once

#include <cstdint>
#include <random>

namespace ruinlab {

using Rng = std::mt19937_64;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-replica seed: mix64(seed, index) = splitmix64(seed ^ splitmix64(index)).
// Distinct indices under one seed give decorrelated streams; the value is a
// pure function of its inputs so replicas are reproducible in any order.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

inline Rng replica_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng{mix64(seed, index)};
}

}  // namespace ruinlab
