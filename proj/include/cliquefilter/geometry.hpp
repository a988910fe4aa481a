#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cliquefilter {

/// Sensor pose: position plus a unit-quaternion orientation whose local
/// x-axis is the canonical forward direction.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

/// Right-handed frame with the local x-axis along `forward`; the local z-axis
/// stays as close to world-up as the forward direction allows.
Eigen::Quaterniond look_rotation(const Eigen::Vector3d& forward);

}  // namespace cliquefilter
