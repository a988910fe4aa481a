#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cliquefilter/errors.hpp"
#include "cliquefilter/filter_bank.hpp"
#include "cliquefilter/rng.hpp"

using namespace cliquefilter;

namespace {

CliqueStep make_step(double t, std::int64_t clique_id,
                     std::vector<MemberObservation> members) {
  CliqueStep step;
  step.time = t;
  step.clique_id = clique_id;
  step.members = std::move(members);
  return step;
}

VariantConfig base_config() {
  VariantConfig cfg;
  cfg.prior = SurvivalPrior::exponential(0.01);
  cfg.p_miss = 0.3;
  cfg.p_false = 0.01;
  cfg.s_max = 1.2;
  cfg.s_obs = 1.0;
  cfg.rho_h = 0.75;
  cfg.rho_l = 0.1;
  cfg.delta = 0.03;
  cfg.suppression = true;
  return cfg;
}

// Random single-member histories: the lone member is always a candidate, as in
// the simulator (a step only exists when the clique has at least one).
std::vector<CliqueStep> random_singleton_history(Rng& rng) {
  std::vector<CliqueStep> steps;
  const int n = static_cast<int>(rng.next_int(3, 18));
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    t += rng.next_range(0.25, 4.0);
    const bool detected = rng.next_double() < 0.5;
    const double distance = rng.next_range(0.0, 1.5);
    steps.push_back(make_step(t, 7, {{42, true, detected, distance}}));
  }
  return steps;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  CHECK(to_string(FilterVariant::kIff) == "iff");
  CHECK(to_string(FilterVariant::kJff) == "jff");
  CHECK(to_string(FilterVariant::kJcf) == "jcf");
  CHECK(to_string(FilterVariant::kJcfr) == "jcfr");
  for (const char* name : {"iff", "jff", "jcf", "jcfr"}) {
    CHECK(to_string(parse_variant(name)) == name);
  }
  CHECK_THROWS_AS(parse_variant("IFF"), ConfigError);
  CHECK_THROWS_AS(parse_variant("joint"), ConfigError);
  CHECK_THROWS_AS(parse_variant(""), ConfigError);
}

TEST_CASE("constructor validates thresholds") {
  auto cfg = base_config();
  cfg.rho_h = 0.1;
  cfg.rho_l = 0.75;
  CHECK_THROWS_AS(VariantFilter(FilterVariant::kIff, cfg), ConfigError);
  cfg = base_config();
  cfg.delta = 0.0;
  CHECK_THROWS_AS(VariantFilter(FilterVariant::kJcf, cfg), ConfigError);
  cfg = base_config();
  cfg.delta = 1.0;
  CHECK_THROWS_AS(VariantFilter(FilterVariant::kJcf, cfg), ConfigError);
  cfg = base_config();
  cfg.rho_h = 1.2;
  CHECK_THROWS_AS(VariantFilter(FilterVariant::kJff, cfg), ConfigError);
}

TEST_CASE("joint clique filtering of singleton cliques reduces to the per-landmark filter") {
  Rng rng(909090);
  for (int trial = 0; trial < 50; ++trial) {
    auto cfg = base_config();
    cfg.p_miss = rng.next_range(0.05, 0.6);
    cfg.p_false = rng.next_range(0.001, 0.2);
    VariantFilter iff(FilterVariant::kIff, cfg);
    VariantFilter jcf(FilterVariant::kJcf, cfg);
    for (const auto& step : random_singleton_history(rng)) {
      const auto a = iff.process(step);
      const auto b = jcf.process(step);
      CHECK(a.suppressed == b.suppressed);
      CHECK(a.updated == b.updated);
      CHECK(a.posterior == doctest::Approx(b.posterior).epsilon(1e-12));
      CHECK(a.decision == b.decision);
    }
  }
}

TEST_CASE("range-degraded filtering at a fixed distance matches a constant miss rate") {
  const auto cfg_r = base_config();
  // Distance whose degraded miss probability equals the constant one exactly.
  const double s = -std::log1p(-cfg_r.p_miss) * cfg_r.s_obs / cfg_r.s_max;
  auto cfg_c = base_config();
  cfg_c.p_miss = range_miss_probability(s, cfg_r.s_max, cfg_r.s_obs);

  VariantFilter jcfr(FilterVariant::kJcfr, cfg_r);
  VariantFilter jcf(FilterVariant::kJcf, cfg_c);
  Rng rng(111);
  double t = 0.0;
  for (int i = 0; i < 20; ++i) {
    t += 1.0;
    std::vector<MemberObservation> members;
    for (std::int64_t k = 0; k < 3; ++k) {
      members.push_back({k, true, rng.next_double() < 0.5, s});
    }
    const auto a = jcfr.process(make_step(t, 0, members));
    const auto b = jcf.process(make_step(t, 0, members));
    CHECK(a.posterior == b.posterior);
    CHECK(a.suppressed == b.suppressed);
    CHECK(a.decision == b.decision);
  }
}

TEST_CASE("suppressed steps change nothing, field for field") {
  auto cfg = base_config();
  VariantFilter filter(FilterVariant::kJcf, cfg);

  // Healthy step first so there is real state to protect.
  auto r1 = filter.process(make_step(1.0, 3, {{0, true, true, 0.4}, {1, true, true, 0.5}}));
  CHECK_FALSE(r1.suppressed);
  CHECK(r1.updated);
  REQUIRE(filter.clique_state(3) != nullptr);
  const CliqueFilterState before = *filter.clique_state(3);

  // Marginal band: every member beyond s_obs, some within s_max, no positives.
  auto r2 = filter.process(make_step(2.0, 3, {{0, true, false, 1.1}, {1, true, false, 1.15}}));
  CHECK(r2.suppressed);
  CHECK_FALSE(r2.updated);
  const CliqueFilterState& after = *filter.clique_state(3);
  CHECK(after == before);
  CHECK(after.update_count() == before.update_count());
  CHECK(after.last_update_time() == before.last_update_time());
  CHECK(after.log_likelihood() == before.log_likelihood());
  CHECK(after.log_lower_partial_sum() == before.log_lower_partial_sum());
  CHECK(after.log_evidence() == before.log_evidence());

  // The suppressed step is still scored: posterior comes from the old state at
  // the new time.
  CHECK(r2.posterior == doctest::Approx(filter.clique_posterior(3, 2.0)));

  SUBCASE("the same distances with enough positives pass the gate") {
    auto r3 = filter.process(make_step(3.0, 3, {{0, true, true, 1.1}, {1, true, false, 1.15}}));
    CHECK_FALSE(r3.suppressed);
    CHECK(r3.updated);
  }
  SUBCASE("a close member defeats suppression") {
    auto r3 = filter.process(make_step(3.0, 3, {{0, true, false, 0.5}, {1, true, false, 1.15}}));
    CHECK_FALSE(r3.suppressed);
  }
  SUBCASE("suppression can be disabled") {
    auto open_cfg = base_config();
    open_cfg.suppression = false;
    VariantFilter open_filter(FilterVariant::kJcf, open_cfg);
    open_filter.process(make_step(1.0, 3, {{0, true, true, 0.4}, {1, true, true, 0.5}}));
    auto r = open_filter.process(
        make_step(2.0, 3, {{0, true, false, 1.1}, {1, true, false, 1.15}}));
    CHECK_FALSE(r.suppressed);
    CHECK(r.updated);
  }
}

TEST_CASE("per-landmark variant aggregates the clique by max") {
  auto cfg = base_config();
  cfg.suppression = false;
  VariantFilter iff(FilterVariant::kIff, cfg);

  // Member 0 misses repeatedly; member 1 is never a candidate, so it keeps the
  // prior tail and should dominate the max.
  double t = 0.0;
  for (int i = 0; i < 12; ++i) {
    t += 1.0;
    iff.process(make_step(t, 5, {{0, true, false, 0.3}, {1, false, false, 0.4}}));
  }
  REQUIRE(iff.landmark_state(0) != nullptr);
  CHECK(iff.landmark_state(1) == nullptr);
  const double miss_member = iff.landmark_posterior(0, t);
  const double idle_member = iff.landmark_posterior(1, t);
  CHECK(miss_member < idle_member);
  CHECK(iff.clique_posterior(5, t) == doctest::Approx(idle_member));

  SUBCASE("the aggregate always equals the best member") {
    t += 1.0;
    iff.process(make_step(t, 5, {{0, true, true, 0.3}, {1, true, false, 0.4}}));
    const double best =
        std::max(iff.landmark_posterior(0, t), iff.landmark_posterior(1, t));
    CHECK(iff.clique_posterior(5, t) == doctest::Approx(best));
  }
}

TEST_CASE("candidate-only and full-clique batches disagree on absent members") {
  auto cfg = base_config();
  cfg.suppression = false;
  VariantFilter jff(FilterVariant::kJff, cfg);
  VariantFilter jcf(FilterVariant::kJcf, cfg);

  const auto step = make_step(1.0, 2, {{0, true, true, 0.4}, {1, false, false, 0.6}});
  const auto a = jff.process(step);
  const auto b = jcf.process(step);
  // The full-clique variant also explains member 1's non-detection, which
  // counts against persistence.
  CHECK(b.posterior < a.posterior);
}

TEST_CASE("removal freezes the filter and pins the decision") {
  auto cfg = base_config();
  cfg.suppression = false;  // let the misses through
  VariantFilter filter(FilterVariant::kJcf, cfg);

  double t = 0.0;
  double removal_posterior = 1.0;
  while (!filter.removed(9)) {
    REQUIRE(t < 200.0);
    t += 1.0;
    const auto r = filter.process(make_step(t, 9, {{0, true, false, 0.2}}));
    if (r.decision == MaintenanceDecision::kRemoveFromMap) removal_posterior = r.posterior;
  }
  REQUIRE(filter.removal_time(9).has_value());
  const double recorded = *filter.removal_time(9);
  CHECK(recorded == t);
  CHECK(removal_posterior < cfg.rho_l);
  const CliqueFilterState frozen = *filter.clique_state(9);

  // A run of strong positives would normally pull the posterior back up; a
  // frozen clique must ignore them and keep reporting removal.
  for (int i = 0; i < 5; ++i) {
    t += 1.0;
    const auto r = filter.process(make_step(t, 9, {{0, true, true, 0.2}}));
    CHECK(r.decision == MaintenanceDecision::kRemoveFromMap);
    CHECK_FALSE(r.updated);
    CHECK(r.posterior <= removal_posterior);
  }
  CHECK(*filter.clique_state(9) == frozen);
  CHECK(*filter.removal_time(9) == recorded);

  SUBCASE("other cliques continue unaffected") {
    const auto r = filter.process(make_step(t, 10, {{5, true, true, 0.2}}));
    CHECK(r.decision == MaintenanceDecision::kKeep);
    CHECK(r.updated);
  }
}

TEST_CASE("posterior queries before any update return the prior tail") {
  auto cfg = base_config();
  const VariantFilter filter(FilterVariant::kJcfr, cfg);
  CHECK(filter.clique_posterior(123, 0.0) == doctest::Approx(1.0));
  CHECK(filter.clique_posterior(123, 50.0) ==
        doctest::Approx(std::exp(cfg.prior.log_tail(50.0))));
  CHECK(filter.clique_state(123) == nullptr);
}

TEST_CASE("a removal can happen on a suppressed step via prior decay") {
  // Strong early state, then only suppressed steps while the prior tail drags
  // the posterior down across rho_l.
  auto cfg = base_config();
  cfg.prior = SurvivalPrior::exponential(0.05);
  cfg.rho_l = 0.2;
  VariantFilter filter(FilterVariant::kJcf, cfg);
  filter.process(make_step(1.0, 0, {{0, true, true, 0.4}}));

  double t = 1.0;
  bool removed_while_suppressed = false;
  for (int i = 0; i < 200 && !filter.removed(0); ++i) {
    t += 1.0;
    const auto r = filter.process(make_step(t, 0, {{0, true, false, 1.1}}));
    REQUIRE(r.suppressed);
    if (r.decision == MaintenanceDecision::kRemoveFromMap) removed_while_suppressed = true;
  }
  CHECK(removed_while_suppressed);
}
