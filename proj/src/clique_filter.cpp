#include "cliquefilter/clique_filter.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "cliquefilter/errors.hpp"

namespace cliquefilter {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)), tolerant of -inf operands.
double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

}  // namespace

CliqueFilterState::CliqueFilterState(std::int64_t clique_id)
    : clique_id_(clique_id), log_lower_partial_sum_(kNegInf) {}

double CliqueFilterState::lower_partial_sum() const {
  return std::exp(log_lower_partial_sum_);
}

double CliqueFilterState::evidence() const { return std::exp(log_evidence_); }

void CliqueFilterState::update(const DetectionBatch& batch, const SensorNoiseModel& noise,
                               const SurvivalPrior& prior) {
  batch.validate();
  if (!(batch.time > last_update_time_)) {
    throw std::invalid_argument("CliqueFilterState::update: batch time must increase");
  }

  double log_persisting = 0.0;
  double log_false_alarm = 0.0;
  for (const auto& outcome : batch.outcomes) {
    log_persisting += std::log(detection_likelihood(outcome, noise, /*persisting=*/true));
    log_false_alarm += std::log(detection_likelihood(outcome, noise, /*persisting=*/false));
  }

  const double log_interval = std::log(prior.interval_mass(last_update_time_, batch.time));

  // L'  = fp_prod * (L + likelihood * [F(t_{N+1}) - F(t_N)])
  log_lower_partial_sum_ =
      log_false_alarm + logaddexp(log_lower_partial_sum_, log_likelihood_ + log_interval);
  // lik' = lik * pers_prod
  log_likelihood_ += log_persisting;
  // ev'  = L' + lik' * (1 - F(t_{N+1}))
  log_evidence_ = logaddexp(log_lower_partial_sum_, log_likelihood_ + prior.log_tail(batch.time));

  last_update_time_ = batch.time;
  ++update_count_;

  if (std::isnan(log_evidence_) || log_evidence_ == kNegInf) {
    throw DegeneracyError("clique filter: evidence collapsed to zero at t=" +
                          std::to_string(batch.time));
  }
}

double CliqueFilterState::posterior(double t, const SurvivalPrior& prior) const {
  if (std::isnan(t) || t < last_update_time_) {
    throw std::domain_error("CliqueFilterState::posterior: query precedes last update");
  }
  if (std::isnan(log_evidence_) || log_evidence_ == kNegInf) {
    throw DegeneracyError("clique filter: posterior undefined, evidence is zero");
  }
  const double log_post = log_likelihood_ + prior.log_tail(t) - log_evidence_;
  // Guard against floating-point spill above 1 only; genuine values pass through.
  const double p = std::exp(log_post);
  return p > 1.0 ? 1.0 : p;
}

std::string CliqueFilterState::serialize() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%lld %d %.17g %.17g %.17g %.17g",
                static_cast<long long>(clique_id_), update_count_, last_update_time_,
                log_likelihood_, log_lower_partial_sum_, log_evidence_);
  return buf;
}

CliqueFilterState CliqueFilterState::deserialize(const std::string& line) {
  long long clique_id = 0;
  int n = 0;
  double t_n = 0.0, log_lik = 0.0, log_lps = 0.0, log_ev = 0.0;
  if (std::sscanf(line.c_str(), "%lld %d %lg %lg %lg %lg", &clique_id, &n, &t_n, &log_lik,
                  &log_lps, &log_ev) != 6) {
    throw std::invalid_argument("CliqueFilterState::deserialize: malformed record");
  }
  CliqueFilterState state(clique_id);
  state.update_count_ = n;
  state.last_update_time_ = t_n;
  state.log_likelihood_ = log_lik;
  state.log_lower_partial_sum_ = log_lps;
  state.log_evidence_ = log_ev;
  return state;
}

CliqueFilterState updated(const CliqueFilterState& state, const DetectionBatch& batch,
                          const SensorNoiseModel& noise, const SurvivalPrior& prior) {
  CliqueFilterState next = state;
  next.update(batch, noise, prior);
  return next;
}

}  // namespace cliquefilter
