#pragma once

#include <cstdint>

namespace robustpoly::rng {

// Counter-based generator built on the splitmix64 finalizer.
// Every random quantity in the project is a pure function of
// (seed, stream, index), so regeneration is order-independent and
// bit-reproducible across platforms.

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix(std::uint64_t x) {
  x += kGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Named substreams keep flag draws, value draws, etc. independent.
enum Stream : std::uint64_t {
  kStreamX = 1,
  kStreamFlag = 2,
  kStreamValue = 3,
  kStreamCoin = 4,
  kStreamTrial = 5,
  kStreamCoeff = 6,
};

inline std::uint64_t at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix(mix(seed ^ mix(stream)) + index * kGamma);
}

// Uniform double in [0, 1) from 53 high bits.
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return u01(at(seed, stream, index));
}

}  // namespace robustpoly::rng
