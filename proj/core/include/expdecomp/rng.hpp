#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace expdecomp {

using Rng = std::mt19937_64;

/// Stream purposes; combined with a base seed and indices to key independent RNG streams.
enum class Stream : std::uint64_t {
  kGeneric = 1,
  kClusteringShift,
  kThresholdSample,
  kTokenRouting,
  kNibbleLevel,
  kInstanceId,
  kSearch,
  kSelection,
  kPartition,
  kPhase1,
  kPhase2,
  kTriangles,
  kGenerator,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic 64-bit key of (seed, tags...).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  return Rng(derive_seed(seed, tags));
}

inline std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [lo, hi].
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

}  // namespace expdecomp
