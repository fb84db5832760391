#pragma once

#include <cstdint>
#include <random>

namespace mmforge {

using Seed = std::uint64_t;

/// Seed used when neither --seed nor MMFORGE_SEED is given.
inline constexpr Seed kDefaultSeed = 0x5EED;

/// Number of seeded attempts any generic-position construction gets.
inline constexpr int kRetryBudget = 32;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for sub-step `step` of a computation seeded with `seed`.
Seed derive_seed(Seed seed, std::uint64_t step) noexcept;

/// Deterministic variate stream. The engine is mt19937_64 (its output
/// sequence is fixed by the standard); the conversions to uniform and normal
/// variates are done here so results do not depend on the standard library
/// vendor.
class SeedStream {
 public:
  explicit SeedStream(Seed seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// +1 or -1 with equal probability.
  double sign() { return (next_u64() >> 63) != 0 ? 1.0 : -1.0; }
  /// Magnitude uniform in [lo, hi] with a random sign.
  double signed_magnitude(double lo, double hi) { return sign() * uniform(lo, hi); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mmforge
