#pragma once

#include <cstdint>
#include <random>

namespace qsat {

/// splitmix64 step; used to mix seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `index` derived from a master seed. Streams for distinct
/// indices are statistically independent, so concurrent trajectories can be
/// seeded as derive_seed(master, trajectory_index) regardless of execution
/// order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0xd1342543de82ef95ULL * (index + 1);
  return splitmix64(s);
}

/// Seeded random stream. Thin wrapper over mt19937_64 that pins down the
/// integer->double conversion and bounded sampling, so identical seeds give
/// identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

  /// Unbiased uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qsat
