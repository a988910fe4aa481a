#pragma once

#include <string>

namespace cliquefilter {

/// Map-maintenance action derived from a clique's persistence posterior.
enum class MaintenanceDecision {
  kKeep,                   // posterior >= rho_h
  kRejectNewMeasurements,  // rho_l <= posterior < rho_h
  kRemoveFromMap           // posterior < rho_l
};

/// Total partition of [0, 1] by the two thresholds. Requires
/// 0 <= rho_l < rho_h <= 1 (ConfigError otherwise). Removal stickiness is the
/// caller's bookkeeping: the first RemoveFromMap fixes a clique's removal
/// time for the survival-time metric.
MaintenanceDecision classify(double posterior_value, double rho_h, double rho_l);

std::string to_string(MaintenanceDecision d);

}  // namespace cliquefilter
