#pragma once

#include <cstdint>
#include <random>

namespace latpcf {

using Seed = std::uint64_t;

/// The pinned generator behind every stochastic routine. The standard
/// distributions are implementation-defined, so sampling below uses only the
/// raw 64-bit stream, which mt19937_64 fixes bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace latpcf
