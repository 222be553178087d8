#pragma once

#include <cstdint>
#include <random>

namespace rexp {

/// Identifies one independent random stream. Distinct (master_seed,
/// stream_index) pairs give independent streams; Monte Carlo loops further
/// key each sample by its index so results do not depend on scheduling.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(const SeedSpec& seed, std::uint64_t sample_index) {
  std::uint64_t k = mix64(seed.master_seed);
  k = mix64(k ^ seed.stream_index);
  k = mix64(k ^ (sample_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return k;
}

/// Random stream for one (seed, sample) key. All conversions from raw bits
/// are done here rather than via <random> distributions, whose output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(const SeedSpec& seed, std::uint64_t sample_index = 0)
      : engine_(derive_key(seed, sample_index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform_closed_open() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n >= 1 (Lemire's unbiased method).
  std::uint64_t below(std::uint64_t n);

  /// One draw from Poisson(mean), exact in distribution.
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rexp
