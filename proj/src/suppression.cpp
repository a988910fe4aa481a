#include "cliquefilter/suppression.hpp"

#include <stdexcept>

namespace cliquefilter {

bool suppress_from_distances(std::span<const double> member_distances,
                             std::size_t positive_count, double s_max, double s_obs,
                             double delta) {
  if (member_distances.empty()) {
    throw std::invalid_argument("suppress: clique must be non-empty");
  }
  if (!(s_obs > 0.0 && s_obs <= s_max)) {
    throw std::invalid_argument("suppress: requires 0 < s_obs <= s_max");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("suppress: delta must lie in (0, 1)");
  }
  if (positive_count > member_distances.size()) {
    throw std::invalid_argument("suppress: more positives than clique members");
  }

  bool any_within_max = false;
  for (double d : member_distances) {
    if (!(s_obs < d)) return false;  // condition 1
    if (d < s_max) any_within_max = true;
  }
  if (!any_within_max) return false;  // condition 2

  const double ratio =
      static_cast<double>(positive_count) / static_cast<double>(member_distances.size());
  return ratio < delta;  // condition 3
}

bool suppress_batch(std::span<const Eigen::Vector3d> clique_positions,
                    const Eigen::Vector3d& sensor_position, const DetectionBatch& batch,
                    double s_max, double s_obs, double delta) {
  std::vector<double> distances;
  distances.reserve(clique_positions.size());
  for (const auto& p : clique_positions) {
    distances.push_back((p - sensor_position).norm());
  }
  std::size_t positives = 0;
  for (const auto& o : batch.outcomes) {
    if (o.detected) ++positives;
  }
  return suppress_from_distances(distances, positives, s_max, s_obs, delta);
}

}  // namespace cliquefilter
