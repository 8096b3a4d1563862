#pragma once

#include <cstdint>

namespace exthall {

// splitmix64; fixed algorithm so seeded runs are reproducible across builds
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // value in [0, n); modulo bias is irrelevant here, determinism is not
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  int residue(int p) { return static_cast<int>(below(static_cast<std::uint64_t>(p))); }
};

}  // namespace exthall
