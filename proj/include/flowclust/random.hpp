#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace flowclust {

/// Deterministic generator used everywhere randomness appears.
///
/// Engine is std::mt19937_64 (fully specified by the standard). The
/// distributions below are written out explicitly instead of using
/// std::uniform_int_distribution and friends, whose output is
/// implementation-defined, so a given seed produces the same stream on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi) { return lo + (hi - lo) * uniform_open01(); }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard normal via Box-Muller (cosine branch only).
  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flowclust
