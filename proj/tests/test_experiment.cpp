#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <string>

#include "cliquefilter/config.hpp"
#include "cliquefilter/experiment.hpp"

using namespace cliquefilter;

namespace {

ExperimentConfig small_config() {
  std::istringstream in(
      "modality = lidar\n"
      "s_max_m = 1.2\n"
      "s_obs_m = 1.0\n"
      "duration_s = 200\n"
      "dt_s = 1\n"
      "period_s = 100\n"
      "n_objects = 4\n"
      "runs = 3\n"
      "base_seed = 11\n"
      "jobs = 2\n");
  return parse_config(in, "test.cfg");
}

}  // namespace

TEST_CASE("a replayed stream reproduces the live timeline byte for byte") {
  const ExperimentConfig cfg = small_config();
  const RunArtifacts live = run_single(cfg, 11);
  REQUIRE_FALSE(live.stream.empty());
  REQUIRE_FALSE(live.timeline.empty());

  const auto replayed = replay_stream(cfg, live.stream);
  REQUIRE(replayed.size() == live.timeline.size());

  std::ostringstream live_text, replay_text;
  write_timeline(live_text, live.timeline);
  write_timeline(replay_text, replayed);
  CHECK(live_text.str() == replay_text.str());
}

TEST_CASE("scored steps are identical across variants") {
  const ExperimentConfig cfg = small_config();
  const RunArtifacts run = run_single(cfg, 11);
  REQUIRE(run.metrics.variants.size() == 4);

  const std::int64_t tr = run.metrics.variants.front().confusion.tr;
  CHECK(tr > 0);
  for (const auto& variant : run.metrics.variants) {
    CHECK(variant.confusion.tr == tr);
    CHECK(variant.confusion.tp + variant.confusion.fp + variant.confusion.tn +
              variant.confusion.fn ==
          variant.confusion.tr);
  }
  // TR counts expected-observation steps, which the stream defines directly.
  CHECK(tr == static_cast<std::int64_t>(run.stream.size()));
}

TEST_CASE("timeline rows cover every step for every variant in config order") {
  const ExperimentConfig cfg = small_config();
  const RunArtifacts run = run_single(cfg, 11);
  REQUIRE(run.timeline.size() == run.stream.size() * cfg.variants.size());
  for (std::size_t i = 0; i < run.stream.size(); ++i) {
    for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
      const TimelineRow& row = run.timeline[i * cfg.variants.size() + v];
      CHECK(row.time == run.stream[i].time);
      CHECK(row.clique_id == run.stream[i].clique_id);
      CHECK(row.variant == cfg.variants[v]);
      CHECK(row.posterior >= 0.0);
      CHECK(row.posterior <= 1.0);
    }
  }
}

TEST_CASE("recorded removal times stay within the run") {
  const ExperimentConfig cfg = small_config();
  const RunArtifacts run = run_single(cfg, 12);
  for (const auto& variant : run.metrics.variants) {
    REQUIRE(variant.removal_times.size() == run.scene.objects.size());
    REQUIRE(variant.true_times.size() == run.scene.objects.size());
    for (std::size_t i = 0; i < variant.removal_times.size(); ++i) {
      CHECK(variant.true_times[i] == run.scene.objects[i].survival_time);
      const double removal = variant.removal_times[i];
      if (!std::isnan(removal)) {
        CHECK(removal > 0.0);
        CHECK(removal <= run.run_end);
      }
    }
  }
}

TEST_CASE("batches aggregate deterministically") {
  const ExperimentConfig cfg = small_config();
  const BatchResult a = run_batch(cfg);
  const BatchResult b = run_batch(cfg);
  CHECK(render_summary_json(a) == render_summary_json(b));
  CHECK(render_report(a) == render_report(b));
  REQUIRE(a.runs == 3);
  REQUIRE(a.per_run.size() == 3);
  CHECK(a.per_run[0].seed == 11);
  CHECK(a.per_run[2].seed == 13);

  SUBCASE("worker count does not change the result") {
    auto serial = cfg;
    serial.jobs = 1;
    CHECK(render_summary_json(run_batch(serial)) == render_summary_json(a));
  }
  SUBCASE("pooled counts equal the sum of the per-run counts") {
    for (std::size_t v = 0; v < a.aggregates.size(); ++v) {
      ConfusionCounts pooled;
      for (const auto& run : a.per_run) pooled += run.variants[v].confusion;
      CHECK(pooled == a.aggregates[v].pooled);
    }
  }
}

TEST_CASE("a single-run batch equals run_single") {
  auto cfg = small_config();
  cfg.runs = 1;
  const BatchResult batch = run_batch(cfg);
  const RunArtifacts single = run_single(cfg, cfg.base_seed);
  REQUIRE(batch.per_run.size() == 1);
  for (std::size_t v = 0; v < batch.aggregates.size(); ++v) {
    const auto& agg = batch.aggregates[v];
    const auto& one = single.metrics.variants[v];
    CHECK(agg.pooled == one.confusion);
    CHECK(agg.mean_accuracy == doctest::Approx(accuracy(one.confusion)));
    CHECK(agg.mes_s_value ==
          doctest::Approx(mes_s(one.removal_times, one.true_times, single.run_end)));
  }
}

TEST_CASE("the sink sees every run exactly once") {
  const ExperimentConfig cfg = small_config();
  std::map<std::uint64_t, std::size_t> seen;
  std::mutex guard;
  run_batch(cfg, [&](const RunArtifacts& artifacts) {
    std::lock_guard<std::mutex> lock(guard);
    seen[artifacts.seed] += 1;
    CHECK_FALSE(artifacts.timeline.empty());
  });
  REQUIRE(seen.size() == 3);
  for (const auto& [seed, count] : seen) {
    CHECK(count == 1);
    CHECK(seed >= 11);
    CHECK(seed <= 13);
  }
}

TEST_CASE("the report renders one row per variant") {
  const ExperimentConfig cfg = small_config();
  const BatchResult result = run_batch(cfg);
  const std::string report = render_report(result);
  for (const auto variant : cfg.variants) {
    CHECK(report.find(std::string(to_string(variant))) != std::string::npos);
  }
  CHECK(report.find("accuracy") != std::string::npos);
  CHECK(report.find("precision") != std::string::npos);
  CHECK(report.find("mes/s") != std::string::npos);
}

TEST_CASE("the summary document carries per-run detail") {
  auto cfg = small_config();
  cfg.runs = 2;
  const BatchResult result = run_batch(cfg);
  const std::string json = render_summary_json(result);
  CHECK(json.find("\"runs\": 2") != std::string::npos);
  CHECK(json.find("\"jcfr\"") != std::string::npos);
  CHECK(json.find("\"per_run\"") != std::string::npos);
  CHECK(json.find("\"removal_times\"") != std::string::npos);
}
