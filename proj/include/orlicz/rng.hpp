#pragma once

#include <cstdint>
#include <random>

namespace orlicz {

/// SplitMix64 finaliser: a bijective 64-bit mix with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replication j at sample size n. Depends only on its arguments, so
/// every replication draws the same stream whatever the worker schedule.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t n,
                                   std::uint64_t j) noexcept {
  return mix64(mix64(mix64(master) ^ n) ^ mix64(j + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with platform-independent uniform and exponential
/// variates (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double exponential() noexcept;
  /// Standard normal by the Box–Muller transform; the second variate of each
  /// pair is cached.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace orlicz
