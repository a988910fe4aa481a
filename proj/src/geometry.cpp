#include "cliquefilter/geometry.hpp"

namespace cliquefilter {

Eigen::Quaterniond look_rotation(const Eigen::Vector3d& forward) {
  Eigen::Vector3d x = forward;
  const double n = x.norm();
  if (n < 1e-12) {
    return Eigen::Quaterniond::Identity();
  }
  x /= n;
  Eigen::Vector3d up = Eigen::Vector3d::UnitZ();
  if (std::abs(x.dot(up)) > 1.0 - 1e-9) {
    up = Eigen::Vector3d::UnitX();  // forward is vertical, pick another up
  }
  const Eigen::Vector3d y = up.cross(x).normalized();
  const Eigen::Vector3d z = x.cross(y);
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return Eigen::Quaterniond(r).normalized();
}

}  // namespace cliquefilter
