#include "cliquefilter/filter_bank.hpp"

#include <algorithm>
#include <cmath>

#include "cliquefilter/errors.hpp"
#include "cliquefilter/suppression.hpp"

namespace cliquefilter {

std::string_view to_string(FilterVariant variant) {
  switch (variant) {
    case FilterVariant::kIff:
      return "iff";
    case FilterVariant::kJff:
      return "jff";
    case FilterVariant::kJcf:
      return "jcf";
    case FilterVariant::kJcfr:
      return "jcfr";
  }
  return "unknown";
}

FilterVariant parse_variant(std::string_view name) {
  if (name == "iff") return FilterVariant::kIff;
  if (name == "jff") return FilterVariant::kJff;
  if (name == "jcf") return FilterVariant::kJcf;
  if (name == "jcfr") return FilterVariant::kJcfr;
  throw ConfigError("unknown filter variant '" + std::string(name) +
                    "' (expected iff, jff, jcf or jcfr)");
}

VariantFilter::VariantFilter(FilterVariant variant, VariantConfig config)
    : variant_(variant), config_(std::move(config)) {
  if (!(config_.rho_l >= 0.0 && config_.rho_l < config_.rho_h && config_.rho_h <= 1.0)) {
    throw ConfigError("VariantFilter: requires 0 <= rho_l < rho_h <= 1");
  }
  if (!(config_.delta > 0.0 && config_.delta < 1.0)) {
    throw ConfigError("VariantFilter: requires delta in (0, 1)");
  }
}

SensorNoiseModel VariantFilter::noise_for_update() const {
  if (variant_ == FilterVariant::kJcfr) {
    return SensorNoiseModel::range_degraded(config_.s_max, config_.s_obs, config_.p_false);
  }
  return SensorNoiseModel::constant(config_.p_miss, config_.p_false);
}

double VariantFilter::prior_tail(double t) const { return std::exp(config_.prior.log_tail(t)); }

const CliqueFilterState* VariantFilter::clique_state(std::int64_t clique_id) const {
  auto it = states_.find(clique_id);
  return it == states_.end() ? nullptr : &it->second;
}

const CliqueFilterState* VariantFilter::landmark_state(std::int64_t landmark_id) const {
  return clique_state(landmark_id);
}

bool VariantFilter::removed(std::int64_t clique_id) const {
  return removal_times_.count(clique_id) > 0;
}

std::optional<double> VariantFilter::removal_time(std::int64_t clique_id) const {
  auto it = removal_times_.find(clique_id);
  if (it == removal_times_.end()) return std::nullopt;
  return it->second;
}

double VariantFilter::landmark_posterior(std::int64_t landmark_id, double t) const {
  if (variant_ != FilterVariant::kIff) return clique_posterior(landmark_id, t);
  auto it = states_.find(landmark_id);
  if (it == states_.end()) return prior_tail(t);
  return it->second.posterior(t, config_.prior);
}

double VariantFilter::clique_posterior(std::int64_t clique_id, double t) const {
  if (variant_ == FilterVariant::kIff) {
    auto members = clique_members_.find(clique_id);
    if (members == clique_members_.end()) return prior_tail(t);
    double best = 0.0;
    for (std::int64_t landmark_id : members->second) {
      best = std::max(best, landmark_posterior(landmark_id, t));
    }
    return best;
  }
  auto it = states_.find(clique_id);
  if (it == states_.end()) return prior_tail(t);
  return it->second.posterior(t, config_.prior);
}

void VariantFilter::apply_update(const CliqueStep& step) {
  const SensorNoiseModel noise = noise_for_update();
  if (variant_ == FilterVariant::kIff) {
    for (const auto& member : step.members) {
      if (!member.candidate) continue;
      DetectionBatch batch;
      batch.time = step.time;
      batch.outcomes.push_back({member.landmark_id, member.detected, member.distance});
      auto [it, inserted] = states_.try_emplace(member.landmark_id, member.landmark_id);
      it->second.update(batch, noise, config_.prior);
    }
    return;
  }
  DetectionBatch batch;
  batch.time = step.time;
  batch.outcomes.reserve(step.members.size());
  const bool full_clique = variant_ == FilterVariant::kJcf || variant_ == FilterVariant::kJcfr;
  for (const auto& member : step.members) {
    if (!full_clique && !member.candidate) continue;
    batch.outcomes.push_back({member.landmark_id, member.detected, member.distance});
  }
  if (batch.outcomes.empty()) return;
  auto [it, inserted] = states_.try_emplace(step.clique_id, step.clique_id);
  it->second.update(batch, noise, config_.prior);
}

VariantFilter::StepResult VariantFilter::process(const CliqueStep& step) {
  StepResult result;
  result.time = step.time;
  result.clique_id = step.clique_id;

  if (variant_ == FilterVariant::kIff) {
    auto& members = clique_members_[step.clique_id];
    for (const auto& member : step.members) {
      if (std::find(members.begin(), members.end(), member.landmark_id) == members.end()) {
        members.push_back(member.landmark_id);
      }
    }
  }

  const bool frozen = removed(step.clique_id);
  if (!frozen) {
    if (config_.suppression) {
      std::vector<double> distances;
      distances.reserve(step.members.size());
      std::size_t positives = 0;
      for (const auto& member : step.members) {
        distances.push_back(member.distance);
        if (member.detected) ++positives;
      }
      result.suppressed = suppress_from_distances(distances, positives, config_.s_max,
                                                  config_.s_obs, config_.delta);
    }
    if (!result.suppressed) {
      apply_update(step);
      result.updated = true;
    }
  }

  result.posterior = clique_posterior(step.clique_id, step.time);
  if (frozen) {
    result.decision = MaintenanceDecision::kRemoveFromMap;
  } else {
    result.decision = classify(result.posterior, config_.rho_h, config_.rho_l);
    if (result.decision == MaintenanceDecision::kRemoveFromMap) {
      removal_times_.emplace(step.clique_id, step.time);
    }
  }
  return result;
}

}  // namespace cliquefilter
