#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace otf {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stream seed for repetition r: finalize(master XOR r * golden_gamma).
/// Fixed here so any reimplementation reproduces the same per-repetition
/// streams.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                           std::uint64_t repetition) noexcept {
  return mix64(master_seed ^ (repetition * 0x9E3779B97F4A7C15ULL));
}

/// Deterministic PRNG (SplitMix64 engine). Every stochastic routine in the
/// library draws through this class, so a (config, seed) pair replays
/// bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    return mix64(z);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + uniform() * (hi - lo);
  }

  /// Uniform integer in [0, n). n must be nonzero.
  std::uint64_t uniform_int(std::uint64_t n) noexcept {
    return next_u64() % n;
  }

  /// Box-Muller; consumes exactly two uniforms per call.
  double normal(double mean, double stddev) noexcept {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace otf
