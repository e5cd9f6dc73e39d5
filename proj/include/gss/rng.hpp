#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random streams. Every draw is a pure function of a key derived
// from (seed, stream tag, indices), so values are splittable, order-independent
// and bit-identical across platforms. No global RNG state anywhere.

namespace gss::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t word) {
  return mix(key ^ mix(word));
}

template <class... Words>
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t word, Words... rest) {
  return derive(derive(key, word), rest...);
}

// stream tags
inline constexpr std::uint64_t kEdge = 1;       // edge presence draws
inline constexpr std::uint64_t kWeight = 2;     // edge weight draws
inline constexpr std::uint64_t kGamma = 3;      // generator coefficients
inline constexpr std::uint64_t kAmplitude = 4;  // sinusoid amplitudes
inline constexpr std::uint64_t kPhase = 5;      // sinusoid phases
inline constexpr std::uint64_t kGaussian = 6;   // iid gaussian signal entries

/// Maps a derived key to [0, 1).
inline double uniform01(std::uint64_t key) {
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t key, double lo, double hi) {
  return lo + (hi - lo) * uniform01(key);
}

/// Standard normal via Box-Muller on two sub-draws of the key.
inline double normal(std::uint64_t key) {
  const double u1 = 1.0 - uniform01(derive(key, 1));  // (0, 1], keeps log finite
  const double u2 = uniform01(derive(key, 2));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace gss::rng
