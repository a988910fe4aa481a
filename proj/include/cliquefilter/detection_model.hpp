#pragma once

#include <cstdint>
#include <vector>

namespace cliquefilter {

/// Outcome of one detection attempt on one landmark.
struct DetectionOutcome {
  std::int64_t landmark_id = 0;
  bool detected = false;
  double distance = 0.0;  // sensor-to-landmark Euclidean distance at this step

  bool operator==(const DetectionOutcome&) const = default;
};

/// All detection outcomes for one clique at one timestep.
struct DetectionBatch {
  double time = 0.0;
  std::vector<DetectionOutcome> outcomes;

  /// Throws std::invalid_argument on empty outcomes, duplicate landmark ids,
  /// or negative distances.
  void validate() const;
};

/// Detector error model: false-detection probability P_F plus either a
/// constant miss probability P_M or the range-degraded P_M(s).
class SensorNoiseModel {
 public:
  enum class MissKind { kConstant, kRangeDegraded };

  static SensorNoiseModel constant(double p_miss, double p_false);
  static SensorNoiseModel range_degraded(double s_max, double s_obs, double p_false);

  MissKind miss_kind() const { return miss_kind_; }
  double p_false() const { return p_false_; }
  double p_miss() const { return p_miss_; }
  double s_max() const { return s_max_; }
  double s_obs() const { return s_obs_; }

  /// P_M for a landmark at the given distance (ignores distance for the
  /// constant model).
  double miss_probability(double distance) const;

 private:
  SensorNoiseModel() = default;

  MissKind miss_kind_ = MissKind::kConstant;
  double p_false_ = 0.0;
  double p_miss_ = 0.0;
  double s_max_ = 0.0;
  double s_obs_ = 0.0;
};

/// Range-based sensor degradation: P_M(s) = 1 - exp(-s * s_max / s_obs).
/// Monotone increasing in s, 0 at s = 0. Requires s >= 0 and 0 < s_obs <= s_max.
double range_miss_probability(double s, double s_max, double s_obs);

/// Likelihood of one detection outcome under the persisting or non-persisting
/// branch:
///   persisting:      P_M^(1-j) * (1 - P_M)^j
///   not persisting:  P_F^j     * (1 - P_F)^(1-j)
double detection_likelihood(const DetectionOutcome& outcome, const SensorNoiseModel& noise,
                            bool persisting);

}  // namespace cliquefilter
