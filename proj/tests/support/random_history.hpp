#pragma once

// Random clique detection histories shared by the recursion tests and the
// acceptance suite. Each draw fixes a clique size, a noise model, a prior and
// a strictly increasing time grid, then samples arbitrary detection patterns.

#include <cmath>
#include <utility>
#include <vector>

#include "cliquefilter/detection_model.hpp"
#include "cliquefilter/rng.hpp"
#include "cliquefilter/survival_prior.hpp"
#include "evidence_oracle.hpp"

namespace cliquefilter::testing {

struct RandomHistory {
  SensorNoiseModel noise = SensorNoiseModel::constant(0.1, 0.1);
  SurvivalPrior prior = SurvivalPrior::exponential(1.0);
  OracleNoise oracle_noise;
  OracleCdf oracle_cdf;
  std::vector<DetectionBatch> batches;
  std::vector<OracleBatch> oracle_batches;
};

inline RandomHistory make_random_history(Rng& rng, int max_clique = 4, int max_batches = 20) {
  RandomHistory history;
  const auto clique_size = rng.next_int(1, max_clique);
  const auto n_batches = rng.next_int(1, max_batches);

  const bool range_degraded = rng.next_double() < 0.5;
  const double p_false = rng.next_range(0.0, 0.3);
  if (range_degraded) {
    const double s_obs = rng.next_range(0.5, 2.0);
    const double s_max = s_obs * rng.next_range(1.0, 3.0);
    history.noise = SensorNoiseModel::range_degraded(s_max, s_obs, p_false);
    history.oracle_noise =
        OracleNoise{true, 0.0L, static_cast<long double>(p_false),
                    static_cast<long double>(s_max), static_cast<long double>(s_obs)};
  } else {
    const double p_miss = rng.next_range(0.0, 0.5);
    history.noise = SensorNoiseModel::constant(p_miss, p_false);
    history.oracle_noise = OracleNoise{false, static_cast<long double>(p_miss),
                                       static_cast<long double>(p_false), 0.0L, 0.0L};
  }

  if (rng.next_double() < 0.5) {
    const double rate = rng.next_range(0.005, 0.2);
    history.prior = SurvivalPrior::exponential(rate);
    history.oracle_cdf = [rate](long double t) {
      return 1.0L - std::exp(-static_cast<long double>(rate) * t);
    };
  } else {
    const double t_mid = rng.next_range(5.0, 30.0);
    const double t_end = t_mid + rng.next_range(20.0, 120.0);
    const double p_mid = rng.next_range(0.1, 0.9);
    history.prior = SurvivalPrior::piecewise_linear_cdf(
        {{0.0, 0.0}, {t_mid, p_mid}, {t_end, 1.0}});
    history.oracle_cdf = [t_mid, t_end, p_mid](long double t) -> long double {
      if (t <= 0.0L) return 0.0L;
      if (t <= t_mid) return t / t_mid * static_cast<long double>(p_mid);
      if (t >= t_end) return 1.0L;
      return p_mid + (t - t_mid) / (t_end - t_mid) * (1.0L - static_cast<long double>(p_mid));
    };
  }

  double t = 0.0;
  for (std::int64_t b = 0; b < n_batches; ++b) {
    t += rng.next_range(0.25, 4.0);
    DetectionBatch batch;
    batch.time = t;
    OracleBatch oracle_batch;
    oracle_batch.time = t;
    for (std::int64_t k = 0; k < clique_size; ++k) {
      // Not every member appears in every batch (partial observability).
      if (clique_size > 1 && rng.next_double() < 0.3) continue;
      const bool detected = rng.next_double() < 0.5;
      const double distance = rng.next_range(0.0, 3.0);
      batch.outcomes.push_back({k, detected, distance});
      oracle_batch.outcomes.push_back({detected, distance});
    }
    if (batch.outcomes.empty()) {
      const bool detected = rng.next_double() < 0.5;
      const double distance = rng.next_range(0.0, 3.0);
      batch.outcomes.push_back({0, detected, distance});
      oracle_batch.outcomes.push_back({detected, distance});
    }
    history.batches.push_back(std::move(batch));
    history.oracle_batches.push_back(std::move(oracle_batch));
  }
  return history;
}

}  // namespace cliquefilter::testing
