#pragma once

#include <cstdint>
#include <string>

#include "cliquefilter/detection_model.hpp"
#include "cliquefilter/survival_prior.hpp"

namespace cliquefilter {

/// Recursive Bayesian persistence estimate for one clique of landmarks.
///
/// A clique is a rigid group of landmarks sharing a single survival time T
/// with prior CDF F. The filter maintains three sufficient statistics over
/// the detection history J^{1:N} observed at times t_1 < ... < t_N:
///
///   likelihood  P(J^{1:N} | T >= t_N)   product of per-landmark detection
///                                       likelihoods under the persisting
///                                       branch, over all batches
///   lower sum   L(J^{1:N})              prior-weighted likelihood mass of the
///                                       "clique died before t_N" branches
///   evidence    P(J^{1:N})              = L + likelihood * (1 - F(t_N))
///
/// and answers posterior queries for t >= t_N:
///
///   P(T >= t | J^{1:N}) = likelihood * (1 - F(t)) / evidence
///
/// All three statistics are stored in log space: the likelihood and the
/// false-alarm products shrink geometrically in N * |clique| and fall below
/// the smallest normal double within a few hundred batches of a realistic
/// run, so a linear representation of the evidence is not viable either.
/// Linear-space views are available through lower_partial_sum()/evidence().
class CliqueFilterState {
 public:
  explicit CliqueFilterState(std::int64_t clique_id);

  std::int64_t clique_id() const { return clique_id_; }
  int update_count() const { return update_count_; }
  double last_update_time() const { return last_update_time_; }
  double log_likelihood() const { return log_likelihood_; }
  double log_lower_partial_sum() const { return log_lower_partial_sum_; }
  double log_evidence() const { return log_evidence_; }

  /// Linear-space views; may underflow to 0 for long histories.
  double lower_partial_sum() const;
  double evidence() const;

  /// Folds one batch of detections into the three recursions. The batch time
  /// must be strictly greater than the last update time; the batch must pass
  /// its own validation. Throws DegeneracyError if the evidence collapses to
  /// exactly zero (the history is impossible under the model).
  void update(const DetectionBatch& batch, const SensorNoiseModel& noise,
              const SurvivalPrior& prior);

  /// Posterior persistence probability P(T >= t | J^{1:N}) for t >=
  /// last_update_time(); earlier queries throw std::domain_error since the
  /// recursion cannot answer retroactively.
  double posterior(double t, const SurvivalPrior& prior) const;

  /// One-line text record: clique_id N t_N log_likelihood
  /// log_lower_partial_sum log_evidence, 17 significant digits so that
  /// deserialize() round-trips losslessly.
  std::string serialize() const;
  static CliqueFilterState deserialize(const std::string& line);

  bool operator==(const CliqueFilterState&) const = default;

 private:
  std::int64_t clique_id_ = 0;
  int update_count_ = 0;          // N
  double last_update_time_ = 0.0; // t_N
  double log_likelihood_ = 0.0;
  double log_lower_partial_sum_;  // -inf at init: L = 0
  double log_evidence_ = 0.0;     // evidence = 1 at init
};

/// update() as a value-returning operation.
CliqueFilterState updated(const CliqueFilterState& state, const DetectionBatch& batch,
                          const SensorNoiseModel& noise, const SurvivalPrior& prior);

}  // namespace cliquefilter
