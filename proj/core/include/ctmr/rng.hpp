#pragma once

#include <cstdint>

namespace ctmr {

// Small hand-rolled generators so simulation output is byte-identical across
// platforms and standard-library versions. std::mt19937 would work but its
// distributions are not pinned by the standard.

/// SplitMix64 mixing function. Stateless form: output n of a SplitMix64
/// stream seeded with `seed` is splitmix64_at(seed, n).
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n) {
  std::uint64_t z = seed + (n + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for member `index` of an ensemble driven by `master`. Distinct
/// indices land on distinct SplitMix64 outputs, so the per-trajectory
/// streams are independent and reproducible in any execution order.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64_at(master, index);
}

/// xoshiro256++ by Blackman and Vigna. State is filled from SplitMix64 so a
/// zero seed is safe.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (int i = 0; i < 4; ++i) s_[i] = splitmix64_at(seed, static_cast<std::uint64_t>(i));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1); safe as a log() argument.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace ctmr
