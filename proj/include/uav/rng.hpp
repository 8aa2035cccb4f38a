#pragma once

// Reproducible random streams for Monte Carlo runs.
//
// Each stream is a std::mt19937_64 engine (bit-exact across standard
// libraries) seeded through the SplitMix64 finaliser applied to
// (run seed, stream id). Variates are produced here rather than through
// <random> distributions, whose output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace uav {

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t stream_id) {
  return mix64(mix64(run_seed) ^ mix64(stream_id + 0x5851F42D4C957F2DULL));
}

class RandomStream {
 public:
  RandomStream(std::uint64_t run_seed, std::uint64_t stream_id)
      : engine_(derive_seed(run_seed, stream_id)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uav
