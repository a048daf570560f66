#pragma once

#include <array>
#include <cstdint>

namespace gossip {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to expand seeds and to
// derive per-trial seeds; constants are the published ones.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of trial `index` in a sweep started from `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t s = base + index;
  return splitmix64(s);
}

struct RngSeed {
  std::uint64_t value = 0;
};

/// xoshiro256** 1.0 (Blackman & Vigna) with a SplitMix64-expanded seed.
///
/// Every stochastic quantity in the library is drawn from this generator
/// through the three methods below, so any other implementation reproducing
/// them bit-for-bit reproduces the event streams:
///   - next_u64(): one xoshiro256** output.
///   - uniform(): (next_u64() >> 11) * 2^-53, in [0, 1).
///   - normal(): Box-Muller on u1 = 1 - uniform(), u2 = uniform();
///     returns r*cos(2*pi*u2) and caches r*sin(2*pi*u2) for the next call.
class Rng {
 public:
  explicit Rng(RngSeed seed) noexcept { reseed(seed); }
  explicit Rng(std::uint64_t seed) noexcept : Rng(RngSeed{seed}) {}

  void reseed(RngSeed seed) noexcept {
    std::uint64_t sm = seed.value;
    for (auto& word : s_) word = splitmix64(sm);
    has_spare_ = false;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double normal() noexcept;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gossip
