#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "cliquefilter/detection_model.hpp"
#include "cliquefilter/geometry.hpp"
#include "cliquefilter/rng.hpp"
#include "cliquefilter/scene.hpp"
#include "cliquefilter/trajectory.hpp"

namespace cliquefilter {

enum class Modality { kCamera, kLidar };

struct SensorSpec {
  Modality modality = Modality::kLidar;
  double s_max = 1.2;
  double s_obs = 1.0;
  // Camera frustum half-angles around the local x-axis.
  double camera_hfov_half = 0.9;
  double camera_vfov_half = 0.7;
  // Lidar band half-angle above/below the sensor's horizontal plane.
  double lidar_vfov_half = 0.4;
  double max_view_angle = 1.0471975511965976;  // 60 degrees
  double p_false = 0.01;
  double detection_lambda_ratio = 0.7;

  double detection_lambda() const { return detection_lambda_ratio * s_max; }
  // Throws std::invalid_argument when a field is out of its documented range.
  void validate() const;
};

struct CandidateFeature {
  std::int64_t landmark_id = -1;
  double distance = 0.0;
  bool within_view_angle = false;
  bool persisting = false;
};

struct CliqueCandidates {
  std::int64_t clique_id = -1;
  std::vector<CandidateFeature> candidates;
};

// Pure geometry: distance gate plus the modality-specific field-of-view test.
// The camera frustum lives in the pose's local frame (boresight = local +x);
// the lidar band is an elevation annulus in vertically-aligned coordinates and
// ignores sensor roll/pitch/yaw entirely.
bool in_field_of_view(const Pose& pose, const SensorSpec& sensor, const Eigen::Vector3d& point);

// Candidates per clique at time t. A feature qualifies iff its distance is
// <= s_max and it passes the field-of-view test; expired objects still yield
// candidates but with persisting=false. Cliques with no candidates are omitted.
std::vector<CliqueCandidates> expected_observable(const Pose& pose, const SensorSpec& sensor,
                                                  const SimScene& scene, double t);

// exp(-d / lambda); throws std::domain_error unless d >= 0 and lambda > 0.
double detection_probability(double distance, double lambda);

// One Bernoulli draw per candidate: persisting and inside the view-angle cone
// uses detection_probability; everything else fires only as a false alarm.
DetectionBatch sample_detections(Rng& rng, double t, const CliqueCandidates& clique,
                                 const SensorSpec& sensor);

// What the simulator records for every clique member at an expected-observation
// step. Non-candidates carry candidate=false, detected=false, and their true
// distance so downstream consumers can rebuild full-clique batches offline.
struct MemberObservation {
  std::int64_t landmark_id = -1;
  bool candidate = false;
  bool detected = false;
  double distance = 0.0;
};

struct CliqueStep {
  double time = 0.0;
  std::int64_t clique_id = -1;
  std::vector<MemberObservation> members;

  std::size_t candidate_count() const;
  std::size_t detected_count() const;
};

using DetectionStream = std::vector<CliqueStep>;

struct SimRun {
  SimScene scene;
  DetectionStream stream;
};

// End-to-end generation: world + trajectory + per-step detection sampling.
// Detection draws use one RNG substream per object, so the sampled history of
// an object is independent of how many other objects exist.
SimRun simulate(std::uint64_t seed, const WorldSpec& world_spec, const TrajectorySpec& traj_spec,
                const SensorSpec& sensor_spec);

// Delimited text log, one row per clique member per expected-observation step.
// The log alone is sufficient to replay every filter variant offline.
void write_detection_log(std::ostream& out, const DetectionStream& stream);
DetectionStream read_detection_log(std::istream& in);

}  // namespace cliquefilter
