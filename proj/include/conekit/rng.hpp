#pragma once

#include <cstdint>
#include <cmath>

namespace conekit {

/// Counter-based pseudo-random generator. Every draw is a pure function of
/// (seed, stream, counter), so sample sets are reproducible bit-for-bit
/// regardless of evaluation order or worker count.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const {
    // SplitMix64-style finalizer over the mixed key.
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (counter + 1)
                      + 0xBF58476D1CE4E5B9ULL * (stream_ + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return bits(counter_++); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  CounterRng fork(std::uint64_t stream) const { return CounterRng(seed_, stream); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace conekit
