#pragma once

#include <cmath>
#include <cstdint>

namespace betascore {

/// Deterministic counter-splittable generator (splitmix64 core). Streams are
/// derived from a (seed, stream) pair, so replication k always sees the same
/// draws no matter how work is divided among threads.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    if (state_ == 0) state_ = 0x106689d45497fdb5ULL;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform draw in (0, 1) with 53-bit resolution, never exactly 0.
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal via Box-Muller; one fresh pair of uniforms per draw so
  /// the stream has no hidden state.
  double next_normal() {
    const double u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double next_lognormal(double mu, double sigma) {
    return std::exp(mu + sigma * next_normal());
  }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace betascore
