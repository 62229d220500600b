#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "msl/common.hpp"

namespace msl {

//! Identifies one reproducible random stream. The same (seed, stream) pair
//! yields the same draw sequence on every run and under any thread count.
struct RngSeed {
  std::uint64_t seed = 20250901ull;
  std::uint64_t stream = 0;

  RngSeed with_stream(std::uint64_t s) const { return RngSeed{seed, s}; }
};

//! Seeded random stream: mt19937_64 keyed by hashing (seed, stream), with
//! self-contained uniform/normal/gamma draws so sequences do not depend on
//! the standard library's unspecified distribution algorithms.
class Rng {
public:
  explicit Rng(RngSeed s) : Rng(s.seed, s.stream) {}

  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix_key(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1], safe under log()
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // unbiased integer in [0, n)
  std::uint64_t uniform_int(std::uint64_t n) {
    require(n > 0, ErrorCode::InvalidArgument, "uniform_int: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // standard normal via Box-Muller, pairs cached
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

  // Gamma(shape, scale), shape >= 1, Marsaglia-Tsang squeeze
  double gamma(double shape, double scale) {
    require(shape >= 1.0 && scale > 0.0, ErrorCode::InvalidArgument,
            "gamma: need shape >= 1 and scale > 0");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform_pos();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v * scale;
      }
    }
  }

private:
  // splitmix64 finalizer, two rounds, applied to a stream-shifted key
  static std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (2 * stream + 1);
    for (int round = 0; round < 2; ++round) {
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z = z ^ (z >> 31);
    }
    return z;
  }

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace msl
