#pragma once

// Deterministic, platform-independent random number generation. The standard
// library's distributions are implementation-defined, so the library carries
// its own u64 -> double mapping and Box-Muller transform; results are
// bit-reproducible across compilers for a fixed seed.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pamlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for work chunk `index` of a run rooted at `root`. Stable with respect
// to thread count; chunks never share generator state.
inline std::uint64_t chunk_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root;
  std::uint64_t a = splitmix64(s);
  s = root ^ (index * 0xD1B54A32D192ED03ull + 0x8BB84B93962EACC9ull);
  return a ^ splitmix64(s);
}

// xoshiro256++ seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
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

  // Uniform on [0,1) with 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    // log1p(-u1) keeps the argument in (0,1] without a branch at u1 = 0.
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pamlab
