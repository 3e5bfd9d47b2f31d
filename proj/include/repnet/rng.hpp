#pragma once

#include <cmath>
#include <cstdint>

namespace repnet {

/// Counter-based random stream keyed by (seed, replication, agent, attempt).
/// Streams with distinct keys are statistically independent, and a stream's
/// output depends only on its key and the draw index, so parallel execution
/// and common-random-number pairing across parameter sweeps are exact.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replication, std::uint64_t agent = 0,
             std::uint64_t attempt = 0) {
    std::uint64_t k = mix64(seed + 0x517cc1b727220a95ull);
    k = mix64(k ^ (replication + 0x2545f4914f6cdd1dull));
    k = mix64(k ^ (agent + 0x9e3779b97f4a7c15ull));
    base_ = mix64(k ^ (attempt + 0xd1342543de82ef95ull));
  }

  std::uint64_t next_u64() { return mix64(base_ + 0x9e3779b97f4a7c15ull * (++counter_)); }

  /// Uniform draw strictly inside (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// One standard normal draw (Box-Muller, cosine branch).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace repnet
