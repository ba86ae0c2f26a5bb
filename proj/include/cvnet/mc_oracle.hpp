#pragma once

// Operational Monte Carlo check of the teleportation protocol.
//
// Each sample draws Alice's homodyne pair from its exact Gaussian marginal,
// conditions Bob's mode on it, applies Bob's displacement and scores the
// Gaussian overlap of the result with the coherent input. Nothing here uses
// the closed-form fidelity of teleportation.hpp.
//
// Random numbers: SplitMix64 (Steele, Lea, Flood 2014) seeded with
// seed ^ shard_index; each sample consumes two outputs x, y and forms two
// standard normals by Box-Muller from u1 = ((x >> 11) + 1) * 2^-53 and
// u2 = (y >> 11) * 2^-53:  z1 = sqrt(-2 ln u1) cos(2 pi u2),
// z2 = sqrt(-2 ln u1) sin(2 pi u2). Shards hold kShardSize samples (the last
// may be shorter) and are merged in shard order, so results do not depend on
// the number of worker threads.

#include "cvnet/teleportation.hpp"

#include <cstddef>
#include <cstdint>

namespace cvnet {

inline constexpr std::uint64_t kShardSize = 8192;

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Two independent standard normals from two generator outputs.
std::pair<double, double> box_muller(SplitMix64& rng);

struct McConfig {
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 0;
  Amplitude input_amplitude{};
};

struct McEstimate {
  std::uint64_t n_samples = 0;
  Real fidelity;
  Real fidelity_se;
  Vector2 output_mean;
  Vector2 output_mean_se;
  Matrix2 output_cm;
  Matrix2 output_cm_se;
};

/// Coherent input with amplitude cfg.input_amplitude through `channel`,
/// Alice measuring per `sign`, Bob adding `delta` on top of her result.
McEstimate run_protocol(const Channel& channel, EprSign sign, const Amplitude& delta, const McConfig& cfg);

}  // namespace cvnet
