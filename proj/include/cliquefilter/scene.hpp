#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cliquefilter {

/// Point landmark on an object surface with an outward-facing normal.
struct OrientedFeature {
  std::int64_t landmark_id = 0;
  std::int64_t parent_object_id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
};

/// Spherical object carrying one clique of features; ceases to persist after
/// survival_time.
struct SimObject {
  std::int64_t object_id = 0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
  double survival_time = 0.0;
  std::vector<OrientedFeature> features;
};

struct SimScene {
  std::vector<SimObject> objects;

  const SimObject* find_object(std::int64_t object_id) const;
  std::size_t total_features() const;
};

struct WorldSpec {
  int n_objects = 8;
  Eigen::Vector3d half_extent{1.5, 1.5, 0.6};  // axis-aligned box around origin
  double radius_min = 0.12;
  double radius_max = 0.3;
  int features_min = 15;
  int features_max = 25;
  double survival_min = 0.0;  // absolute times; upper bound may exceed the run
  double survival_max = 0.0;
  // Sensor path samples that placement must stay clear of: the sensor passes by
  // objects, never through them. Empty disables the check.
  std::vector<Eigen::Vector3d> keepout_points;
  double keepout_margin = 0.0;  // minimum path-to-surface clearance
};

/// Places non-overlapping spheres in the workspace box, scatters features
/// uniformly over each surface with radially outward normals, and draws each
/// object's survival time. Deterministic per seed. Throws std::runtime_error
/// if an object cannot be placed after bounded retries.
SimScene generate_world(std::uint64_t seed, const WorldSpec& spec);

/// Structured text dump for inspection and replay.
void write_scene(std::ostream& out, const SimScene& scene);
SimScene read_scene(std::istream& in);

}  // namespace cliquefilter
