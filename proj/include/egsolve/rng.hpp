#pragma once

#include <cstdint>

namespace egsolve {

// splitmix64: the fixed generator behind every deterministic draw the
// project makes, so generated arenas are reproducible bit-for-bit across
// platforms and reimplementations. Reference stream for seed 0:
//   0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, ...
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Draw in [0, n); n > 0. Plain modulo: the tiny bias is irrelevant here
  // and the rule stays trivial to reproduce in other languages.
  uint64_t next_below(uint64_t n) { return next() % n; }

  // Draw in [lo, hi] inclusive.
  int64_t next_in(int64_t lo, int64_t hi) {
    uint64_t span =
        static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    return static_cast<int64_t>(static_cast<uint64_t>(lo) + next_below(span));
  }

  // Bernoulli with probability given in parts per million.
  bool chance_ppm(uint64_t ppm) { return next_below(1'000'000) < ppm; }
};

}  // namespace egsolve
