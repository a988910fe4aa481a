#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cliquefilter/detection_model.hpp"

using namespace cliquefilter;

TEST_CASE("range miss probability follows its printed form") {
  CHECK(range_miss_probability(1.0, 10.0, 5.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  CHECK(range_miss_probability(0.0, 10.0, 5.0) == 0.0);
  SUBCASE("monotone increasing in distance") {
    double previous = -1.0;
    for (double s = 0.0; s <= 12.0; s += 0.25) {
      const double p = range_miss_probability(s, 10.0, 5.0);
      CHECK(p > previous);
      CHECK(p >= 0.0);
      CHECK(p < 1.0);
      previous = p;
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(range_miss_probability(-0.1, 10.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(range_miss_probability(1.0, 10.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(range_miss_probability(1.0, 5.0, 10.0), std::domain_error);
  }
}

TEST_CASE("noise model factories enforce their invariants") {
  CHECK_THROWS_AS(SensorNoiseModel::constant(1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(SensorNoiseModel::constant(-0.1, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(SensorNoiseModel::constant(0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SensorNoiseModel::range_degraded(5.0, 10.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(SensorNoiseModel::range_degraded(5.0, 0.0, 0.01), std::invalid_argument);

  const auto constant = SensorNoiseModel::constant(0.3, 0.02);
  CHECK(constant.miss_probability(0.0) == 0.3);
  CHECK(constant.miss_probability(99.0) == 0.3);

  const auto degraded = SensorNoiseModel::range_degraded(10.0, 5.0, 0.02);
  CHECK(degraded.miss_probability(1.0) == range_miss_probability(1.0, 10.0, 5.0));
  CHECK(degraded.miss_probability(0.0) == 0.0);
}

TEST_CASE("detection likelihood covers all four outcome branches") {
  const auto noise = SensorNoiseModel::constant(0.3, 0.02);
  DetectionOutcome outcome{7, true, 1.0};
  CHECK(detection_likelihood(outcome, noise, true) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(detection_likelihood(outcome, noise, false) == doctest::Approx(0.02).epsilon(1e-15));
  outcome.detected = false;
  CHECK(detection_likelihood(outcome, noise, true) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(detection_likelihood(outcome, noise, false) == doctest::Approx(0.98).epsilon(1e-15));

  SUBCASE("range-degraded branch uses the outcome's own distance") {
    const auto degraded = SensorNoiseModel::range_degraded(10.0, 5.0, 0.02);
    const DetectionOutcome far{3, false, 1.0};
    CHECK(detection_likelihood(far, degraded, true) ==
          doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  }
}

TEST_CASE("batch validation") {
  DetectionBatch batch;
  batch.time = 1.0;
  CHECK_THROWS_AS(batch.validate(), std::invalid_argument);
  batch.outcomes = {{1, true, 0.5}, {2, false, 0.7}};
  CHECK_NOTHROW(batch.validate());
  batch.outcomes.push_back({1, false, 0.9});
  CHECK_THROWS_AS(batch.validate(), std::invalid_argument);
  batch.outcomes = {{1, true, -0.5}};
  CHECK_THROWS_AS(batch.validate(), std::invalid_argument);
}
