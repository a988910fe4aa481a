#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliquefilter/clique_filter.hpp"
#include "cliquefilter/detection_model.hpp"
#include "cliquefilter/maintenance.hpp"
#include "cliquefilter/sensor.hpp"
#include "cliquefilter/survival_prior.hpp"

namespace cliquefilter {

enum class FilterVariant { kIff, kJff, kJcf, kJcfr };

std::string_view to_string(FilterVariant variant);
// Accepts the lowercase short names ("iff", "jff", "jcf", "jcfr"); throws ConfigError otherwise.
FilterVariant parse_variant(std::string_view name);

struct VariantConfig {
  SurvivalPrior prior = SurvivalPrior::exponential(0.01);
  double p_miss = 0.3;
  double p_false = 0.01;
  double s_max = 1.2;
  double s_obs = 1.0;
  double rho_h = 0.75;
  double rho_l = 0.1;
  double delta = 0.03;
  bool suppression = true;
};

// One filtering strategy driven by a stream of CliqueSteps. The four variants
// differ only in state granularity, batch assembly and miss model:
//   kIff  - one state per landmark, singleton batches for candidates only.
//   kJff  - one state per clique, batch holds the candidate members only.
//   kJcf  - one state per clique, batch holds every member (absent members
//           enter as non-detections at their true distances).
//   kJcfr - kJcf with the range-degraded miss model.
// The suppression gate and the removal policy are shared by all variants:
// a suppressed step updates nothing, and once a clique's posterior falls
// below rho_l at a step its filters freeze and the removal time is recorded.
class VariantFilter {
 public:
  VariantFilter(FilterVariant variant, VariantConfig config);

  struct StepResult {
    double time = 0.0;
    std::int64_t clique_id = -1;
    double posterior = 1.0;
    MaintenanceDecision decision = MaintenanceDecision::kKeep;
    bool suppressed = false;
    bool updated = false;
  };

  // Consumes one expected-observation step. Steps must arrive in
  // non-decreasing time order; per-clique times must strictly increase.
  StepResult process(const CliqueStep& step);

  FilterVariant variant() const { return variant_; }
  const VariantConfig& config() const { return config_; }

  // Posterior persistence probability at time t. For kIff this is the max
  // over the clique's member filters; members never yet updated contribute
  // the prior tail. Unknown cliques return the prior tail.
  double clique_posterior(std::int64_t clique_id, double t) const;
  // Per-landmark posterior; meaningful for kIff (joint variants report their
  // clique's posterior via clique_posterior instead).
  double landmark_posterior(std::int64_t landmark_id, double t) const;

  // nullptr when no state exists yet. Joint variants key states by clique id,
  // kIff by landmark id.
  const CliqueFilterState* clique_state(std::int64_t clique_id) const;
  const CliqueFilterState* landmark_state(std::int64_t landmark_id) const;

  bool removed(std::int64_t clique_id) const;
  std::optional<double> removal_time(std::int64_t clique_id) const;

 private:
  SensorNoiseModel noise_for_update() const;
  double prior_tail(double t) const;
  void apply_update(const CliqueStep& step);

  FilterVariant variant_;
  VariantConfig config_;
  // kIff: keyed by landmark id. Joint variants: keyed by clique id.
  std::map<std::int64_t, CliqueFilterState> states_;
  // kIff only: member ids seen so far per clique, for the max aggregation.
  std::map<std::int64_t, std::vector<std::int64_t>> clique_members_;
  std::map<std::int64_t, double> removal_times_;
};

}  // namespace cliquefilter
