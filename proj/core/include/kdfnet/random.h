#pragma once

#include <cstdint>
#include <random>

namespace kdfnet {

// SplitMix64 finalizer. Spreads structured seeds (e.g. base ^ index) before
// they reach the Mersenne Twister.
constexpr std::uint64_t MixSeed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

using Rng = std::mt19937_64;

inline Rng MakeRng(std::uint64_t seed) { return Rng(MixSeed(seed)); }

}  // namespace kdfnet
