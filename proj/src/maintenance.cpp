#include "cliquefilter/maintenance.hpp"

#include "cliquefilter/errors.hpp"

namespace cliquefilter {

MaintenanceDecision classify(double posterior_value, double rho_h, double rho_l) {
  if (!(rho_l >= 0.0 && rho_l < rho_h && rho_h <= 1.0)) {
    throw ConfigError("classify: requires 0 <= rho_l < rho_h <= 1");
  }
  if (posterior_value >= rho_h) return MaintenanceDecision::kKeep;
  if (posterior_value >= rho_l) return MaintenanceDecision::kRejectNewMeasurements;
  return MaintenanceDecision::kRemoveFromMap;
}

std::string to_string(MaintenanceDecision d) {
  switch (d) {
    case MaintenanceDecision::kKeep:
      return "keep";
    case MaintenanceDecision::kRejectNewMeasurements:
      return "reject";
    case MaintenanceDecision::kRemoveFromMap:
      return "remove";
  }
  return "unknown";
}

}  // namespace cliquefilter
