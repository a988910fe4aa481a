#include "cliquefilter/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cliquefilter {

void SensorSpec::validate() const {
  if (!(s_obs > 0.0 && s_obs <= s_max)) {
    throw std::invalid_argument("SensorSpec: requires 0 < s_obs <= s_max");
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (double angle : {camera_hfov_half, camera_vfov_half, lidar_vfov_half, max_view_angle}) {
    if (!(angle > 0.0 && angle <= kHalfPi)) {
      throw std::invalid_argument("SensorSpec: angles must lie in (0, pi/2]");
    }
  }
  if (!(p_false >= 0.0 && p_false < 1.0)) {
    throw std::invalid_argument("SensorSpec: p_false must lie in [0, 1)");
  }
  if (!(detection_lambda_ratio > 0.0)) {
    throw std::invalid_argument("SensorSpec: detection_lambda_ratio must be positive");
  }
}

bool in_field_of_view(const Pose& pose, const SensorSpec& sensor, const Eigen::Vector3d& point) {
  const Eigen::Vector3d delta = point - pose.position;
  const double d = delta.norm();
  if (d > sensor.s_max) return false;
  if (d == 0.0) return true;
  if (sensor.modality == Modality::kCamera) {
    const Eigen::Vector3d local = pose.orientation.conjugate() * delta;
    if (local.x() <= 0.0) return false;
    return std::abs(local.y()) <= std::tan(sensor.camera_hfov_half) * local.x() &&
           std::abs(local.z()) <= std::tan(sensor.camera_vfov_half) * local.x();
  }
  const double elevation = std::asin(std::clamp(delta.z() / d, -1.0, 1.0));
  return std::abs(elevation) <= sensor.lidar_vfov_half;
}

std::vector<CliqueCandidates> expected_observable(const Pose& pose, const SensorSpec& sensor,
                                                  const SimScene& scene, double t) {
  std::vector<CliqueCandidates> result;
  for (const auto& obj : scene.objects) {
    CliqueCandidates clique;
    clique.clique_id = obj.object_id;
    const bool persisting = t <= obj.survival_time;
    for (const auto& feature : obj.features) {
      if (!in_field_of_view(pose, sensor, feature.position)) continue;
      const Eigen::Vector3d to_sensor = pose.position - feature.position;
      const double d = to_sensor.norm();
      CandidateFeature cand;
      cand.landmark_id = feature.landmark_id;
      cand.distance = d;
      cand.persisting = persisting;
      if (d == 0.0) {
        cand.within_view_angle = true;
      } else {
        const double cosine = std::clamp(feature.normal.dot(to_sensor / d), -1.0, 1.0);
        cand.within_view_angle = std::acos(cosine) <= sensor.max_view_angle;
      }
      clique.candidates.push_back(cand);
    }
    if (!clique.candidates.empty()) result.push_back(std::move(clique));
  }
  return result;
}

double detection_probability(double distance, double lambda) {
  if (!(distance >= 0.0)) throw std::domain_error("detection_probability: distance must be >= 0");
  if (!(lambda > 0.0)) throw std::domain_error("detection_probability: lambda must be > 0");
  return std::exp(-distance / lambda);
}

DetectionBatch sample_detections(Rng& rng, double t, const CliqueCandidates& clique,
                                 const SensorSpec& sensor) {
  DetectionBatch batch;
  batch.time = t;
  batch.outcomes.reserve(clique.candidates.size());
  const double lambda = sensor.detection_lambda();
  for (const auto& cand : clique.candidates) {
    const double p = (cand.persisting && cand.within_view_angle)
                         ? detection_probability(cand.distance, lambda)
                         : sensor.p_false;
    DetectionOutcome outcome;
    outcome.landmark_id = cand.landmark_id;
    outcome.detected = rng.next_double() < p;
    outcome.distance = cand.distance;
    batch.outcomes.push_back(outcome);
  }
  return batch;
}

std::size_t CliqueStep::candidate_count() const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [](const auto& m) { return m.candidate; }));
}

std::size_t CliqueStep::detected_count() const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [](const auto& m) { return m.detected; }));
}

SimRun simulate(std::uint64_t seed, const WorldSpec& world_spec, const TrajectorySpec& traj_spec,
                const SensorSpec& sensor_spec) {
  sensor_spec.validate();
  SimRun run;
  const Trajectory trajectory(seed, traj_spec);

  // Objects must not straddle the sensor path; one period covers the whole
  // path, sampled densely enough that consecutive samples cannot tunnel
  // through the margin.
  WorldSpec placement = world_spec;
  if (placement.keepout_margin > 0.0) {
    const double dt = traj_spec.dt / 4.0;
    placement.keepout_points.reserve(static_cast<std::size_t>(traj_spec.period / dt) + 1);
    for (double t = 0.0; t <= traj_spec.period; t += dt) {
      placement.keepout_points.push_back(trajectory.position_at(t));
    }
  }
  run.scene = generate_world(seed, placement);

  std::vector<Rng> detection_rngs;
  detection_rngs.reserve(run.scene.objects.size());
  for (const auto& obj : run.scene.objects) {
    detection_rngs.emplace_back(
        derive_stream(seed, RngStream::kDetection, static_cast<std::uint64_t>(obj.object_id)));
  }

  const double lambda = sensor_spec.detection_lambda();
  for (double t : trajectory.sample_times()) {
    // Filters are initialized at t_0 = 0 and require strictly increasing
    // batch times, so detection sampling starts one step in.
    if (t == 0.0) continue;
    const Pose pose = trajectory.pose_at(t);
    for (std::size_t oi = 0; oi < run.scene.objects.size(); ++oi) {
      const auto& obj = run.scene.objects[oi];
      const bool persisting = t <= obj.survival_time;
      CliqueStep step;
      step.time = t;
      step.clique_id = obj.object_id;
      step.members.reserve(obj.features.size());
      bool any_candidate = false;
      for (const auto& feature : obj.features) {
        MemberObservation member;
        member.landmark_id = feature.landmark_id;
        const Eigen::Vector3d to_sensor = pose.position - feature.position;
        member.distance = to_sensor.norm();
        member.candidate = in_field_of_view(pose, sensor_spec, feature.position);
        if (member.candidate) {
          any_candidate = true;
          bool within_view = true;
          if (member.distance > 0.0) {
            const double cosine =
                std::clamp(feature.normal.dot(to_sensor / member.distance), -1.0, 1.0);
            within_view = std::acos(cosine) <= sensor_spec.max_view_angle;
          }
          const double p = (persisting && within_view)
                               ? detection_probability(member.distance, lambda)
                               : sensor_spec.p_false;
          member.detected = detection_rngs[oi].next_double() < p;
        }
        step.members.push_back(member);
      }
      if (any_candidate) run.stream.push_back(std::move(step));
    }
  }
  return run;
}

void write_detection_log(std::ostream& out, const DetectionStream& stream) {
  out << "# cliquefilter detection log v1\n";
  out << "# time\tclique\tlandmark\tcandidate\tdetected\tdistance\n";
  char buf[256];
  for (const auto& step : stream) {
    for (const auto& m : step.members) {
      std::snprintf(buf, sizeof(buf), "%.17g\t%lld\t%lld\t%d\t%d\t%.17g\n", step.time,
                    static_cast<long long>(step.clique_id), static_cast<long long>(m.landmark_id),
                    m.candidate ? 1 : 0, m.detected ? 1 : 0, m.distance);
      out << buf;
    }
  }
}

DetectionStream read_detection_log(std::istream& in) {
  DetectionStream stream;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double time = 0.0, distance = 0.0;
    long long clique_id = 0, landmark_id = 0;
    int candidate = 0, detected = 0;
    if (!(ss >> time >> clique_id >> landmark_id >> candidate >> detected >> distance)) {
      throw std::runtime_error("detection log line " + std::to_string(line_no) +
                               ": malformed record");
    }
    if ((candidate != 0 && candidate != 1) || (detected != 0 && detected != 1)) {
      throw std::runtime_error("detection log line " + std::to_string(line_no) +
                               ": flags must be 0 or 1");
    }
    if (detected == 1 && candidate == 0) {
      throw std::runtime_error("detection log line " + std::to_string(line_no) +
                               ": non-candidate marked detected");
    }
    MemberObservation member;
    member.landmark_id = landmark_id;
    member.candidate = candidate == 1;
    member.detected = detected == 1;
    member.distance = distance;
    if (stream.empty() || stream.back().time != time || stream.back().clique_id != clique_id) {
      CliqueStep step;
      step.time = time;
      step.clique_id = clique_id;
      stream.push_back(std::move(step));
    }
    stream.back().members.push_back(member);
  }
  return stream;
}

}  // namespace cliquefilter
