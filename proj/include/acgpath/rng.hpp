#pragma once

#include <cstdint>

namespace acg {

// SplitMix64. Used instead of <random> engines-plus-distributions because the
// generated instances must be bit-identical across platforms and standard
// library versions; std::uniform_int_distribution makes no such promise.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] via rejection sampling, bias free.
  uint64_t uniform(uint64_t lo, uint64_t hi) {
    uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full 64-bit range
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + v % span;
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform(0, static_cast<uint64_t>(hi - lo)));
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform_real() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

}  // namespace acg
