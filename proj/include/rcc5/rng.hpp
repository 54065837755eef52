#pragma once

#include <cstdint>

namespace rcc5 {

// Deterministic generator with identical streams on every platform:
// splitmix64 steps, bounded draws by multiply-shift with rejection.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n must be positive.
  uint64_t below(uint64_t n) {
    unsigned __int128 m = (unsigned __int128)next() * n;
    auto low = uint64_t(m);
    if (low < n) {
      uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = (unsigned __int128)next() * n;
        low = uint64_t(m);
      }
    }
    return uint64_t(m >> 64);
  }

  // True with probability p, consuming exactly one draw.
  bool chance(double p) {
    if (p <= 0.0) { next(); return false; }
    if (p >= 1.0) { next(); return true; }
    return (next() >> 11) < uint64_t(p * 9007199254740992.0);  // p * 2^53
  }

 private:
  uint64_t state_;
};

}  // namespace rcc5
