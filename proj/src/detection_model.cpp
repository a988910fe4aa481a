#include "cliquefilter/detection_model.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace cliquefilter {

void DetectionBatch::validate() const {
  if (outcomes.empty()) {
    throw std::invalid_argument("DetectionBatch: outcomes must be non-empty");
  }
  std::unordered_set<std::int64_t> seen;
  for (const auto& o : outcomes) {
    if (o.distance < 0.0 || std::isnan(o.distance)) {
      throw std::invalid_argument("DetectionBatch: distances must be >= 0");
    }
    if (!seen.insert(o.landmark_id).second) {
      throw std::invalid_argument("DetectionBatch: duplicate landmark id");
    }
  }
}

SensorNoiseModel SensorNoiseModel::constant(double p_miss, double p_false) {
  if (!(p_miss >= 0.0 && p_miss < 1.0)) {
    throw std::invalid_argument("SensorNoiseModel: p_miss must lie in [0, 1)");
  }
  if (!(p_false >= 0.0 && p_false < 1.0)) {
    throw std::invalid_argument("SensorNoiseModel: p_false must lie in [0, 1)");
  }
  SensorNoiseModel m;
  m.miss_kind_ = MissKind::kConstant;
  m.p_miss_ = p_miss;
  m.p_false_ = p_false;
  return m;
}

SensorNoiseModel SensorNoiseModel::range_degraded(double s_max, double s_obs, double p_false) {
  if (!(s_obs > 0.0 && s_obs <= s_max)) {
    throw std::invalid_argument("SensorNoiseModel: requires 0 < s_obs <= s_max");
  }
  if (!(p_false >= 0.0 && p_false < 1.0)) {
    throw std::invalid_argument("SensorNoiseModel: p_false must lie in [0, 1)");
  }
  SensorNoiseModel m;
  m.miss_kind_ = MissKind::kRangeDegraded;
  m.s_max_ = s_max;
  m.s_obs_ = s_obs;
  m.p_false_ = p_false;
  return m;
}

double SensorNoiseModel::miss_probability(double distance) const {
  if (miss_kind_ == MissKind::kConstant) return p_miss_;
  return range_miss_probability(distance, s_max_, s_obs_);
}

double range_miss_probability(double s, double s_max, double s_obs) {
  if (!(s >= 0.0)) {
    throw std::domain_error("range_miss_probability: s must be >= 0");
  }
  if (!(s_obs > 0.0 && s_obs <= s_max)) {
    throw std::domain_error("range_miss_probability: requires 0 < s_obs <= s_max");
  }
  return -std::expm1(-s * s_max / s_obs);
}

double detection_likelihood(const DetectionOutcome& outcome, const SensorNoiseModel& noise,
                            bool persisting) {
  if (persisting) {
    const double p_miss = noise.miss_probability(outcome.distance);
    return outcome.detected ? 1.0 - p_miss : p_miss;
  }
  return outcome.detected ? noise.p_false() : 1.0 - noise.p_false();
}

}  // namespace cliquefilter
