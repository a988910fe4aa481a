#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cliquefilter/filter_bank.hpp"
#include "cliquefilter/scene.hpp"
#include "cliquefilter/sensor.hpp"
#include "cliquefilter/survival_prior.hpp"
#include "cliquefilter/trajectory.hpp"

namespace cliquefilter {

// Flat key = value experiment description. Units are part of the key names.
// Optional keys are materialized to their defaults at parse time, so
// parse -> serialize -> parse reproduces the configuration field for field.
struct ExperimentConfig {
  // Sensor (s_max_m, s_obs_m and modality are required).
  Modality modality = Modality::kLidar;
  double s_max_m = 0.0;
  double s_obs_m = 0.0;
  double camera_hfov_half_rad = 0.9;
  double camera_vfov_half_rad = 0.7;
  double lidar_vfov_half_rad = 0.4;
  double max_view_angle_rad = 1.0471975511965976;
  double p_false = 0.01;
  double detection_lambda_ratio = 0.7;

  // Timing (all required).
  double duration_s = 0.0;
  double dt_s = 0.0;
  double period_s = 0.0;

  // Trajectory amplitude bounds.
  double traj_amp_x_m = 1.6;
  double traj_amp_y_m = 1.6;
  double traj_amp_z_m = 0.3;

  // World (n_objects required).
  int n_objects = 0;
  double workspace_half_x_m = 2.4;
  double workspace_half_y_m = 2.4;
  double workspace_half_z_m = 0.5;
  double object_radius_min_m = 0.12;
  double object_radius_max_m = 0.3;
  double clearance_m = 0.3;  // minimum sensor-path-to-object-surface distance
  int features_min = 15;
  int features_max = 25;
  double survival_min_frac = 0.3;
  double survival_max_frac = 1.1;

  // Survival prior; prior_rate_per_s defaults to 2*ln(2)/duration.
  std::string prior_kind = "exponential";
  double prior_rate_per_s = 0.0;
  std::vector<std::pair<double, double>> prior_knots;

  // Filtering.
  double p_miss = 0.3;
  double rho_h = 0.75;
  double rho_l = 0.1;
  double delta = 0.03;
  bool suppression_iff = true;
  bool suppression_jff = true;
  bool suppression_jcf = true;
  bool suppression_jcfr = true;
  std::vector<FilterVariant> variants{FilterVariant::kIff, FilterVariant::kJff,
                                      FilterVariant::kJcf, FilterVariant::kJcfr};

  // Harness (runs and base_seed required).
  int runs = 0;
  std::uint64_t base_seed = 0;
  int jobs = 0;  // 0 = one worker per hardware thread
  std::string out_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;

  WorldSpec world_spec() const;
  TrajectorySpec trajectory_spec() const;
  SensorSpec sensor_spec() const;
  SurvivalPrior survival_prior() const;
  bool suppression_for(FilterVariant variant) const;
  VariantConfig variant_config(FilterVariant variant) const;
};

// Throws ConfigError with the offending line or field named.
ExperimentConfig parse_config(std::istream& in, const std::string& source_name);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

// %.17g, the formatting used by every text artifact this library writes.
std::string format_double(double value);

}  // namespace cliquefilter
