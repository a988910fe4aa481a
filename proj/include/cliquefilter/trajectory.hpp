#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "cliquefilter/geometry.hpp"

namespace cliquefilter {

struct TrajectorySpec {
  double period = 100.0;
  double duration = 400.0;
  double dt = 1.0;
  // Per-axis cap on the sum of harmonic amplitudes; keeps the path inside the
  // workspace without clamping.
  Eigen::Vector3d amplitude_bound{1.2, 1.2, 0.4};
};

// Smooth periodic sensor path: per axis a sum of three sinusoids at integer
// harmonics of the base period, so pose_at(t + period) == pose_at(t).
class Trajectory {
 public:
  Trajectory(std::uint64_t seed, const TrajectorySpec& spec);

  Pose pose_at(double t) const;
  Eigen::Vector3d position_at(double t) const;
  Eigen::Vector3d velocity_at(double t) const;

  // Poses at t = 0, dt, 2*dt, ... while t <= duration (within half a step).
  std::vector<Pose> sample() const;
  std::vector<double> sample_times() const;

  const TrajectorySpec& spec() const { return spec_; }

 private:
  TrajectorySpec spec_;
  // amp_[axis][harmonic], phase_[axis][harmonic]; harmonic k uses angular
  // frequency (k+1) * 2*pi / period.
  std::array<std::array<double, 3>, 3> amp_{};
  std::array<std::array<double, 3>, 3> phase_{};
  Eigen::Quaterniond orientation_offset_{1.0, 0.0, 0.0, 0.0};
};

}  // namespace cliquefilter
