#pragma once

#include <cstdint>
#include <string_view>

namespace cliquefilter {

/// Portable xoshiro256++ generator, seeded through splitmix64.
///
/// All randomness in the simulator flows through this generator so that a
/// (seed, config) pair reproduces the same world and detection stream on any
/// platform. Subsystems draw from independent streams derived from the run
/// seed (see derive_stream), so e.g. adding objects to a world does not shift
/// the detection draws of existing objects.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_double();

  /// Uniform integer in [lo, hi] inclusive. Requires lo <= hi.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [lo, hi).
  double next_range(double lo, double hi);

  /// Standard normal via Box-Muller (two uniforms per pair, cached).
  double next_normal();

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stream identifiers for the simulation subsystems.
enum class RngStream : std::uint64_t {
  kWorld = 0x7761746572,       // object placement
  kObject = 0x6f626a656374,    // per-object features and survival draw
  kTrajectory = 0x7472616a,    // path harmonics and orientation offset
  kDetection = 0x646574656374  // per-object detection sampling
};

/// Derives an independent substream seed from (seed, stream, index).
std::uint64_t derive_stream(std::uint64_t seed, RngStream stream, std::uint64_t index = 0);

}  // namespace cliquefilter
