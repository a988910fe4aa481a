#include "cliquefilter/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cliquefilter/rng.hpp"

namespace cliquefilter {

Trajectory::Trajectory(std::uint64_t seed, const TrajectorySpec& spec) : spec_(spec) {
  if (!(spec.period > 0.0) || !(spec.duration > 0.0) || !(spec.dt > 0.0)) {
    throw std::invalid_argument("Trajectory: period, duration and dt must be positive");
  }
  Rng rng(derive_stream(seed, RngStream::kTrajectory));
  for (int axis = 0; axis < 3; ++axis) {
    // Random weights, then scale so the amplitudes sum to the axis bound.
    // Guarantees |position[axis]| <= amplitude_bound[axis] for all t.
    std::array<double, 3> w{};
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      w[k] = rng.next_range(0.2, 1.0);
      total += w[k];
    }
    for (int k = 0; k < 3; ++k) {
      amp_[axis][k] = spec.amplitude_bound[axis] * w[k] / total;
      phase_[axis][k] = rng.next_range(0.0, 2.0 * std::numbers::pi);
    }
  }
  // Constant orientation offset keeps the boresight from tracking velocity
  // exactly, so features are seen over a spread of view angles.
  const double yaw = rng.next_range(-0.35, 0.35);
  const double pitch = rng.next_range(-0.25, 0.25);
  orientation_offset_ = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                        Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY());
}

Eigen::Vector3d Trajectory::position_at(double t) const {
  const double omega = 2.0 * std::numbers::pi / spec_.period;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < 3; ++k) {
      p[axis] += amp_[axis][k] * std::sin((k + 1) * omega * t + phase_[axis][k]);
    }
  }
  return p;
}

Eigen::Vector3d Trajectory::velocity_at(double t) const {
  const double omega = 2.0 * std::numbers::pi / spec_.period;
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < 3; ++k) {
      v[axis] += amp_[axis][k] * (k + 1) * omega * std::cos((k + 1) * omega * t + phase_[axis][k]);
    }
  }
  return v;
}

Pose Trajectory::pose_at(double t) const {
  Pose pose;
  pose.position = position_at(t);
  pose.orientation = look_rotation(velocity_at(t)) * orientation_offset_;
  return pose;
}

std::vector<double> Trajectory::sample_times() const {
  std::vector<double> times;
  const auto n_steps = static_cast<std::int64_t>(std::floor(spec_.duration / spec_.dt + 0.5));
  times.reserve(n_steps + 1);
  for (std::int64_t i = 0; i <= n_steps; ++i) times.push_back(i * spec_.dt);
  return times;
}

std::vector<Pose> Trajectory::sample() const {
  const auto times = sample_times();
  std::vector<Pose> poses;
  poses.reserve(times.size());
  for (double t : times) poses.push_back(pose_at(t));
  return poses;
}

}  // namespace cliquefilter
