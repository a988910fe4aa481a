#include "evidence_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace cliquefilter::testing {

long double oracle_miss_probability(const OracleNoise& noise, long double distance) {
  if (!noise.range_degraded) return noise.p_miss;
  return 1.0L - std::exp(-distance * noise.s_max / noise.s_obs);
}

namespace {

long double batch_likelihood(const OracleBatch& batch, const OracleNoise& noise,
                             bool persisting) {
  long double product = 1.0L;
  for (const auto& outcome : batch.outcomes) {
    long double p_detect;
    if (persisting) {
      p_detect = 1.0L - oracle_miss_probability(noise, outcome.distance);
    } else {
      p_detect = noise.p_false;
    }
    product *= outcome.detected ? p_detect : (1.0L - p_detect);
  }
  return product;
}

}  // namespace

long double oracle_evidence(const std::vector<OracleBatch>& history, const OracleNoise& noise,
                            const OracleCdf& cdf) {
  const std::size_t n = history.size();
  double previous_time = 0.0;
  for (const auto& batch : history) {
    if (!(batch.time > previous_time)) {
      throw std::invalid_argument("oracle: batch times must strictly increase");
    }
    previous_time = batch.time;
  }

  // Death inside (t_i, t_{i+1}]: batches 1..i observed while persisting,
  // batches i+1..N as pure false alarms. i = 0 means death before the first
  // batch; the final term is survival past t_N.
  long double evidence = 0.0L;
  for (std::size_t i = 0; i <= n; ++i) {
    long double term;
    if (i < n) {
      const long double lower = i == 0 ? 0.0L : static_cast<long double>(history[i - 1].time);
      const long double upper = static_cast<long double>(history[i].time);
      term = cdf(upper) - cdf(lower);
    } else {
      const long double last = n == 0 ? 0.0L : static_cast<long double>(history[n - 1].time);
      term = 1.0L - cdf(last);
    }
    for (std::size_t k = 0; k < n; ++k) {
      term *= batch_likelihood(history[k], noise, /*persisting=*/k < i);
    }
    evidence += term;
  }
  return evidence;
}

long double oracle_posterior(double t, const std::vector<OracleBatch>& history,
                             const OracleNoise& noise, const OracleCdf& cdf) {
  if (!history.empty() && t < history.back().time) {
    throw std::invalid_argument("oracle: posterior query before the last batch");
  }
  long double numerator = 1.0L - cdf(static_cast<long double>(t));
  for (const auto& batch : history) {
    numerator *= batch_likelihood(batch, noise, /*persisting=*/true);
  }
  return numerator / oracle_evidence(history, noise, cdf);
}

}  // namespace cliquefilter::testing
