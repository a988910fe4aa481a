#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "cliquefilter/detection_model.hpp"

namespace cliquefilter {

/// False-negative suppression gate for marginally observable cliques.
///
/// A whole clique's detection batch is rejected at one timestep iff all three
/// hold, with strict inequalities (ties do not suppress):
///   1. every clique landmark lies beyond s_obs,
///   2. at least one clique landmark lies within s_max,
///   3. the positive-detection ratio |tau*| / |tau| is below delta.
///
/// Requires 0 < s_obs <= s_max and delta in (0, 1). The denominator of
/// condition 3 is the full clique size, not the number of attempted
/// detections.
bool suppress_from_distances(std::span<const double> member_distances,
                             std::size_t positive_count, double s_max, double s_obs,
                             double delta);

/// Position-based form: distances are computed from the clique landmark
/// positions and the sensor position; positives are counted from the batch.
bool suppress_batch(std::span<const Eigen::Vector3d> clique_positions,
                    const Eigen::Vector3d& sensor_position, const DetectionBatch& batch,
                    double s_max, double s_obs, double delta);

}  // namespace cliquefilter
