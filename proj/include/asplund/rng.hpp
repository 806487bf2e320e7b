#pragma once

#include <cstdint>

namespace asplund {

// Counter-based pseudo-random stream (splitmix64). All randomness in the
// toolkit flows from explicit 64-bit seeds through this class; there is no
// global RNG state, and identical seeds give bit-identical streams on every
// platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream for (seed, stream) without sharing state.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed);
    r.state_ ^= 0x9E3779B97F4A7C15ull * (stream + 1);
    r.next_u64();
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

} // namespace asplund
