#pragma once

#include <cstdint>

namespace wex {

// SplitMix64 generator. Used everywhere randomness is needed so that runs
// are bit-reproducible across platforms (std:: distributions are not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit mantissa.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n == 0 returns 0.
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // Uniform integer in [lo, hi], inclusive.
  int range(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) { return uniform() < p; }

  // Independent stream derived from the original seed and an index;
  // advancing this generator does not affect substreams.
  Rng substream(uint64_t index) const {
    uint64_t z = seed_ ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  uint64_t seed_;
  uint64_t state_;
};

}  // namespace wex
