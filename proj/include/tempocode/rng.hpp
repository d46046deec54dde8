#pragma once

// Portable random streams. Every draw is addressed by a coordinate tuple
// (domain, object, trial, contact, component, ...) so results do not depend
// on generation order, thread count or platform <random> implementations.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace tempocode::rng {

/// SplitMix64 finaliser (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of a coordinate tuple.
constexpr std::uint64_t hash_coords(std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;  // pi fraction bits
  for (std::uint64_t c : coords) h = mix64(h ^ mix64(c));
  return h;
}

/// PCG32 (XSH-RR, 64-bit state), O'Neill's reference constants.
class Pcg32 {
 public:
  using result_type = std::uint32_t;
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;

  constexpr Pcg32(std::uint64_t seed, std::uint64_t stream = 0xDA3E39CB94B95BDBULL)
      : inc_((stream << 1u) | 1u) {
    (*this)();
    state_ += seed;
    (*this)();
  }

  constexpr result_type operator()() {
    const std::uint64_t old = state_;
    state_ = old * kMultiplier + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  static constexpr result_type min() { return 0u; }
  static constexpr result_type max() { return 0xFFFFFFFFu; }

  /// 53-bit uniform in [0, 1).
  double uniform() {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_;
};

/// Standard normal via Box-Muller (cosine branch) on a fresh pair of uniforms.
inline double box_muller(Pcg32& g) {
  const double u1 = 1.0 - g.uniform();  // (0, 1]
  const double u2 = g.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Generator for one coordinate: seeded with seed XOR hash(coords).
inline Pcg32 stream_at(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) {
  return Pcg32(seed ^ hash_coords(coords));
}

inline double gaussian_at(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) {
  auto g = stream_at(seed, coords);
  return box_muller(g);
}

/// Derives an independent child seed (e.g. one per noise level).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) {
  return mix64(seed ^ hash_coords(coords));
}

}  // namespace tempocode::rng
