// Deterministic pseudo-random streams.
//
// xoshiro256++ seeded through splitmix64, so the same 64-bit seed produces the
// same stream on every platform (no reliance on std::mt19937 distribution
// implementations, whose bounded-int / real outputs differ across standard
// libraries).
//
// Stream splitting: independent trials use derive_stream(master, index), which
// perturbs the master seed by the golden-ratio constant times (index+1) and
// tempers it through splitmix64. Every parallel or multi-trial facility in
// this library derives per-trial seeds this way, which is why results do not
// depend on thread count or trial scheduling.
#ifndef COVGEN_RNG_HPP
#define COVGEN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace covgen {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for the trial with the given index under a master seed.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9E3779B97F4A7C15ull * (index + 1));
  return splitmix64_next(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    for (auto& word : state_) word = splitmix64_next(seed);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform integer in [0, n), n >= 1. Lemire's multiply-shift with rejection,
  // so the result is exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard exponential variate; -log1p(-u) keeps precision near u = 0.
  double exponential() { return -std::log1p(-unit()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace covgen

#endif  // COVGEN_RNG_HPP
