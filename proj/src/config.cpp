#include "cliquefilter/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cliquefilter/errors.hpp"

namespace cliquefilter {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": expected a number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::int64_t parsed = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_uint(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t parsed = std::stoull(value, &pos);
    if (pos != value.size() || value.find('-') != std::string::npos) {
      throw std::invalid_argument("not a non-negative integer");
    }
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("field " + key + ": expected a non-negative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("field " + key + ": expected on/off, got '" + value + "'");
}

std::vector<std::string> split(const std::string& value, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::vector<std::pair<double, double>> parse_knots(const std::string& value,
                                                   const std::string& key) {
  std::vector<std::pair<double, double>> knots;
  for (const auto& part : split(value, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("field " + key + ": expected time:probability pairs, got '" + part + "'");
    }
    knots.emplace_back(parse_double(trim(part.substr(0, colon)), key),
                       parse_double(trim(part.substr(colon + 1)), key));
  }
  return knots;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

WorldSpec ExperimentConfig::world_spec() const {
  WorldSpec spec;
  spec.n_objects = n_objects;
  spec.half_extent = {workspace_half_x_m, workspace_half_y_m, workspace_half_z_m};
  spec.radius_min = object_radius_min_m;
  spec.radius_max = object_radius_max_m;
  spec.keepout_margin = clearance_m;
  spec.features_min = features_min;
  spec.features_max = features_max;
  spec.survival_min = survival_min_frac * duration_s;
  spec.survival_max = survival_max_frac * duration_s;
  return spec;
}

TrajectorySpec ExperimentConfig::trajectory_spec() const {
  TrajectorySpec spec;
  spec.period = period_s;
  spec.duration = duration_s;
  spec.dt = dt_s;
  spec.amplitude_bound = {traj_amp_x_m, traj_amp_y_m, traj_amp_z_m};
  return spec;
}

SensorSpec ExperimentConfig::sensor_spec() const {
  SensorSpec spec;
  spec.modality = modality;
  spec.s_max = s_max_m;
  spec.s_obs = s_obs_m;
  spec.camera_hfov_half = camera_hfov_half_rad;
  spec.camera_vfov_half = camera_vfov_half_rad;
  spec.lidar_vfov_half = lidar_vfov_half_rad;
  spec.max_view_angle = max_view_angle_rad;
  spec.p_false = p_false;
  spec.detection_lambda_ratio = detection_lambda_ratio;
  return spec;
}

SurvivalPrior ExperimentConfig::survival_prior() const {
  if (prior_kind == "exponential") return SurvivalPrior::exponential(prior_rate_per_s);
  if (prior_kind == "piecewise_linear") return SurvivalPrior::piecewise_linear_cdf(prior_knots);
  throw ConfigError("field prior_kind: unknown prior '" + prior_kind + "'");
}

bool ExperimentConfig::suppression_for(FilterVariant variant) const {
  switch (variant) {
    case FilterVariant::kIff:
      return suppression_iff;
    case FilterVariant::kJff:
      return suppression_jff;
    case FilterVariant::kJcf:
      return suppression_jcf;
    case FilterVariant::kJcfr:
      return suppression_jcfr;
  }
  throw ConfigError("unknown filter variant");
}

VariantConfig ExperimentConfig::variant_config(FilterVariant variant) const {
  VariantConfig vc;
  vc.prior = survival_prior();
  vc.p_miss = p_miss;
  vc.p_false = p_false;
  vc.s_max = s_max_m;
  vc.s_obs = s_obs_m;
  vc.rho_h = rho_h;
  vc.rho_l = rho_l;
  vc.delta = delta;
  vc.suppression = suppression_for(variant);
  return vc;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source_name) {
  ExperimentConfig config;
  std::set<std::string> seen;
  bool prior_rate_given = false;
  bool global_suppression_given = false;
  bool global_suppression = true;
  std::set<std::string> variant_suppression_keys;

  const std::map<std::string, std::function<void(const std::string&, const std::string&)>>
      setters = {
          {"modality",
           [&](const std::string& k, const std::string& v) {
             if (v == "lidar") {
               config.modality = Modality::kLidar;
             } else if (v == "camera") {
               config.modality = Modality::kCamera;
             } else {
               throw ConfigError("field " + k + ": expected lidar or camera, got '" + v + "'");
             }
           }},
          {"s_max_m", [&](const std::string& k, const std::string& v) { config.s_max_m = parse_double(v, k); }},
          {"s_obs_m", [&](const std::string& k, const std::string& v) { config.s_obs_m = parse_double(v, k); }},
          {"camera_hfov_half_rad", [&](const std::string& k, const std::string& v) { config.camera_hfov_half_rad = parse_double(v, k); }},
          {"camera_vfov_half_rad", [&](const std::string& k, const std::string& v) { config.camera_vfov_half_rad = parse_double(v, k); }},
          {"lidar_vfov_half_rad", [&](const std::string& k, const std::string& v) { config.lidar_vfov_half_rad = parse_double(v, k); }},
          {"max_view_angle_rad", [&](const std::string& k, const std::string& v) { config.max_view_angle_rad = parse_double(v, k); }},
          {"p_false", [&](const std::string& k, const std::string& v) { config.p_false = parse_double(v, k); }},
          {"detection_lambda_ratio", [&](const std::string& k, const std::string& v) { config.detection_lambda_ratio = parse_double(v, k); }},
          {"duration_s", [&](const std::string& k, const std::string& v) { config.duration_s = parse_double(v, k); }},
          {"dt_s", [&](const std::string& k, const std::string& v) { config.dt_s = parse_double(v, k); }},
          {"period_s", [&](const std::string& k, const std::string& v) { config.period_s = parse_double(v, k); }},
          {"traj_amp_x_m", [&](const std::string& k, const std::string& v) { config.traj_amp_x_m = parse_double(v, k); }},
          {"traj_amp_y_m", [&](const std::string& k, const std::string& v) { config.traj_amp_y_m = parse_double(v, k); }},
          {"traj_amp_z_m", [&](const std::string& k, const std::string& v) { config.traj_amp_z_m = parse_double(v, k); }},
          {"n_objects", [&](const std::string& k, const std::string& v) { config.n_objects = static_cast<int>(parse_int(v, k)); }},
          {"workspace_half_x_m", [&](const std::string& k, const std::string& v) { config.workspace_half_x_m = parse_double(v, k); }},
          {"workspace_half_y_m", [&](const std::string& k, const std::string& v) { config.workspace_half_y_m = parse_double(v, k); }},
          {"workspace_half_z_m", [&](const std::string& k, const std::string& v) { config.workspace_half_z_m = parse_double(v, k); }},
          {"object_radius_min_m", [&](const std::string& k, const std::string& v) { config.object_radius_min_m = parse_double(v, k); }},
          {"object_radius_max_m", [&](const std::string& k, const std::string& v) { config.object_radius_max_m = parse_double(v, k); }},
          {"clearance_m", [&](const std::string& k, const std::string& v) { config.clearance_m = parse_double(v, k); }},
          {"features_min", [&](const std::string& k, const std::string& v) { config.features_min = static_cast<int>(parse_int(v, k)); }},
          {"features_max", [&](const std::string& k, const std::string& v) { config.features_max = static_cast<int>(parse_int(v, k)); }},
          {"survival_min_frac", [&](const std::string& k, const std::string& v) { config.survival_min_frac = parse_double(v, k); }},
          {"survival_max_frac", [&](const std::string& k, const std::string& v) { config.survival_max_frac = parse_double(v, k); }},
          {"prior_kind",
           [&](const std::string& k, const std::string& v) {
             if (v != "exponential" && v != "piecewise_linear") {
               throw ConfigError("field " + k + ": expected exponential or piecewise_linear, got '" + v + "'");
             }
             config.prior_kind = v;
           }},
          {"prior_rate_per_s",
           [&](const std::string& k, const std::string& v) {
             config.prior_rate_per_s = parse_double(v, k);
             prior_rate_given = true;
           }},
          {"prior_knots", [&](const std::string& k, const std::string& v) { config.prior_knots = parse_knots(v, k); }},
          {"p_miss", [&](const std::string& k, const std::string& v) { config.p_miss = parse_double(v, k); }},
          {"rho_h", [&](const std::string& k, const std::string& v) { config.rho_h = parse_double(v, k); }},
          {"rho_l", [&](const std::string& k, const std::string& v) { config.rho_l = parse_double(v, k); }},
          {"delta", [&](const std::string& k, const std::string& v) { config.delta = parse_double(v, k); }},
          {"suppression",
           [&](const std::string& k, const std::string& v) {
             global_suppression = parse_bool(v, k);
             global_suppression_given = true;
           }},
          {"suppression_iff",
           [&](const std::string& k, const std::string& v) {
             config.suppression_iff = parse_bool(v, k);
             variant_suppression_keys.insert(k);
           }},
          {"suppression_jff",
           [&](const std::string& k, const std::string& v) {
             config.suppression_jff = parse_bool(v, k);
             variant_suppression_keys.insert(k);
           }},
          {"suppression_jcf",
           [&](const std::string& k, const std::string& v) {
             config.suppression_jcf = parse_bool(v, k);
             variant_suppression_keys.insert(k);
           }},
          {"suppression_jcfr",
           [&](const std::string& k, const std::string& v) {
             config.suppression_jcfr = parse_bool(v, k);
             variant_suppression_keys.insert(k);
           }},
          {"variants",
           [&](const std::string& k, const std::string& v) {
             config.variants.clear();
             for (const auto& name : split(v, ',')) {
               if (name.empty()) continue;
               config.variants.push_back(parse_variant(name));
             }
             if (config.variants.empty()) throw ConfigError("field " + k + ": empty variant list");
           }},
          {"runs", [&](const std::string& k, const std::string& v) { config.runs = static_cast<int>(parse_int(v, k)); }},
          {"base_seed", [&](const std::string& k, const std::string& v) { config.base_seed = parse_uint(v, k); }},
          {"jobs", [&](const std::string& k, const std::string& v) { config.jobs = static_cast<int>(parse_int(v, k)); }},
          {"out_dir", [&](const std::string& k, const std::string& v) { config.out_dir = v; }},
      };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto setter = setters.find(key);
    if (setter == setters.end()) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": unknown key '" + key +
                        "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                        "'");
    }
    try {
      setter->second(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }

  for (const char* required : {"modality", "s_max_m", "s_obs_m", "duration_s", "dt_s", "period_s",
                               "n_objects", "runs", "base_seed"}) {
    if (!seen.count(required)) {
      throw ConfigError(source_name + ": missing required field " + required);
    }
  }

  if (global_suppression_given) {
    for (const char* key :
         {"suppression_iff", "suppression_jff", "suppression_jcf", "suppression_jcfr"}) {
      if (!variant_suppression_keys.count(key)) {
        if (std::string(key) == "suppression_iff") config.suppression_iff = global_suppression;
        if (std::string(key) == "suppression_jff") config.suppression_jff = global_suppression;
        if (std::string(key) == "suppression_jcf") config.suppression_jcf = global_suppression;
        if (std::string(key) == "suppression_jcfr") config.suppression_jcfr = global_suppression;
      }
    }
  }
  if (!prior_rate_given) config.prior_rate_per_s = default_exponential_rate(config.duration_s);

  // Cross-field validation; errors name the offending field(s).
  if (!(config.s_obs_m > 0.0 && config.s_obs_m <= config.s_max_m)) {
    throw ConfigError("fields s_obs_m/s_max_m: requires 0 < s_obs_m <= s_max_m");
  }
  if (!(config.dt_s > 0.0)) throw ConfigError("field dt_s: must be positive");
  if (!(config.period_s > 0.0)) throw ConfigError("field period_s: must be positive");
  if (!(config.duration_s >= 2.0 * config.period_s)) {
    throw ConfigError("fields duration_s/period_s: duration must cover at least two periods");
  }
  if (config.n_objects < 1) throw ConfigError("field n_objects: must be >= 1");
  if (config.runs < 1) throw ConfigError("field runs: must be >= 1");
  if (config.jobs < 0) throw ConfigError("field jobs: must be >= 0");
  if (!(config.features_min >= 1 && config.features_min <= config.features_max)) {
    throw ConfigError("fields features_min/features_max: requires 1 <= min <= max");
  }
  if (!(config.object_radius_min_m > 0.0 &&
        config.object_radius_min_m <= config.object_radius_max_m)) {
    throw ConfigError("fields object_radius_min_m/object_radius_max_m: requires 0 < min <= max");
  }
  if (!(config.clearance_m >= 0.0)) {
    throw ConfigError("field clearance_m: must be >= 0");
  }
  if (!(config.survival_min_frac > 0.0 &&
        config.survival_min_frac <= config.survival_max_frac)) {
    throw ConfigError("fields survival_min_frac/survival_max_frac: requires 0 < min <= max");
  }
  if (!(config.rho_l >= 0.0 && config.rho_l < config.rho_h && config.rho_h <= 1.0)) {
    throw ConfigError("fields rho_l/rho_h: requires 0 <= rho_l < rho_h <= 1");
  }
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw ConfigError("field delta: must lie in (0, 1)");
  }
  if (config.prior_kind == "exponential" && !(config.prior_rate_per_s > 0.0)) {
    throw ConfigError("field prior_rate_per_s: must be positive");
  }
  if (config.prior_kind == "piecewise_linear" && config.prior_knots.empty()) {
    throw ConfigError("field prior_knots: required for the piecewise_linear prior");
  }
  try {
    config.sensor_spec().validate();
    config.survival_prior();
  } catch (const std::exception& e) {
    throw ConfigError(std::string(e.what()));
  }
  std::set<FilterVariant> unique_variants(config.variants.begin(), config.variants.end());
  if (unique_variants.size() != config.variants.size()) {
    throw ConfigError("field variants: duplicate variant listed");
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "modality = " << (config.modality == Modality::kLidar ? "lidar" : "camera") << "\n";
  out << "s_max_m = " << format_double(config.s_max_m) << "\n";
  out << "s_obs_m = " << format_double(config.s_obs_m) << "\n";
  out << "camera_hfov_half_rad = " << format_double(config.camera_hfov_half_rad) << "\n";
  out << "camera_vfov_half_rad = " << format_double(config.camera_vfov_half_rad) << "\n";
  out << "lidar_vfov_half_rad = " << format_double(config.lidar_vfov_half_rad) << "\n";
  out << "max_view_angle_rad = " << format_double(config.max_view_angle_rad) << "\n";
  out << "p_false = " << format_double(config.p_false) << "\n";
  out << "detection_lambda_ratio = " << format_double(config.detection_lambda_ratio) << "\n";
  out << "duration_s = " << format_double(config.duration_s) << "\n";
  out << "dt_s = " << format_double(config.dt_s) << "\n";
  out << "period_s = " << format_double(config.period_s) << "\n";
  out << "traj_amp_x_m = " << format_double(config.traj_amp_x_m) << "\n";
  out << "traj_amp_y_m = " << format_double(config.traj_amp_y_m) << "\n";
  out << "traj_amp_z_m = " << format_double(config.traj_amp_z_m) << "\n";
  out << "n_objects = " << config.n_objects << "\n";
  out << "workspace_half_x_m = " << format_double(config.workspace_half_x_m) << "\n";
  out << "workspace_half_y_m = " << format_double(config.workspace_half_y_m) << "\n";
  out << "workspace_half_z_m = " << format_double(config.workspace_half_z_m) << "\n";
  out << "object_radius_min_m = " << format_double(config.object_radius_min_m) << "\n";
  out << "object_radius_max_m = " << format_double(config.object_radius_max_m) << "\n";
  out << "clearance_m = " << format_double(config.clearance_m) << "\n";
  out << "features_min = " << config.features_min << "\n";
  out << "features_max = " << config.features_max << "\n";
  out << "survival_min_frac = " << format_double(config.survival_min_frac) << "\n";
  out << "survival_max_frac = " << format_double(config.survival_max_frac) << "\n";
  out << "prior_kind = " << config.prior_kind << "\n";
  out << "prior_rate_per_s = " << format_double(config.prior_rate_per_s) << "\n";
  if (!config.prior_knots.empty()) {
    out << "prior_knots = ";
    for (std::size_t i = 0; i < config.prior_knots.size(); ++i) {
      if (i) out << ",";
      out << format_double(config.prior_knots[i].first) << ":"
          << format_double(config.prior_knots[i].second);
    }
    out << "\n";
  }
  out << "p_miss = " << format_double(config.p_miss) << "\n";
  out << "rho_h = " << format_double(config.rho_h) << "\n";
  out << "rho_l = " << format_double(config.rho_l) << "\n";
  out << "delta = " << format_double(config.delta) << "\n";
  out << "suppression_iff = " << (config.suppression_iff ? "on" : "off") << "\n";
  out << "suppression_jff = " << (config.suppression_jff ? "on" : "off") << "\n";
  out << "suppression_jcf = " << (config.suppression_jcf ? "on" : "off") << "\n";
  out << "suppression_jcfr = " << (config.suppression_jcfr ? "on" : "off") << "\n";
  out << "variants = ";
  for (std::size_t i = 0; i < config.variants.size(); ++i) {
    if (i) out << ",";
    out << to_string(config.variants[i]);
  }
  out << "\n";
  out << "runs = " << config.runs << "\n";
  out << "base_seed = " << config.base_seed << "\n";
  out << "jobs = " << config.jobs << "\n";
  out << "out_dir = " << config.out_dir << "\n";
  return out.str();
}

}  // namespace cliquefilter
