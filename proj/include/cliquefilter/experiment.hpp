#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cliquefilter/config.hpp"
#include "cliquefilter/filter_bank.hpp"
#include "cliquefilter/metrics.hpp"
#include "cliquefilter/scene.hpp"
#include "cliquefilter/sensor.hpp"

namespace cliquefilter {

struct TimelineRow {
  double time = 0.0;
  std::int64_t clique_id = -1;
  FilterVariant variant = FilterVariant::kIff;
  double posterior = 1.0;
  MaintenanceDecision decision = MaintenanceDecision::kKeep;
  bool suppressed = false;
};

// One variant's outcome over one run.
struct PerVariantRun {
  FilterVariant variant = FilterVariant::kIff;
  ConfusionCounts confusion;
  // Parallel arrays over the scene's objects, in object id order. A clique the
  // filter never removed carries NaN (mes_s substitutes run_end).
  std::vector<double> removal_times;
  std::vector<double> true_times;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<PerVariantRun> variants;
};

// Everything a single run produces. Replays (no ground truth available) leave
// scene empty and metrics without confusion counts.
struct RunArtifacts {
  std::uint64_t seed = 0;
  double run_end = 0.0;
  SimScene scene;
  DetectionStream stream;
  std::vector<TimelineRow> timeline;
  RunMetrics metrics;
};

// Simulates seed's world, drives every configured variant over the identical
// stream in lockstep, scores each expected-observation step against ground
// truth, and records the per-variant timelines.
RunArtifacts run_single(const ExperimentConfig& config, std::uint64_t seed);

// Filtering only: timeline rows for a pre-recorded stream, same code path and
// ordering as run_single, so rows for the same stream match byte for byte.
std::vector<TimelineRow> replay_stream(const ExperimentConfig& config,
                                       const DetectionStream& stream);

struct VariantAggregate {
  FilterVariant variant = FilterVariant::kIff;
  ConfusionCounts pooled;
  // Mean over runs; runs where the statistic is undefined are skipped.
  double mean_accuracy = 0.0;
  std::optional<double> mean_precision;
  std::optional<double> pooled_precision;
  double mes_s_value = 0.0;
};

struct BatchResult {
  int runs = 0;
  std::uint64_t base_seed = 0;
  double run_end = 0.0;
  std::vector<VariantAggregate> aggregates;
  std::vector<RunMetrics> per_run;
};

// Runs seeds base_seed .. base_seed+runs-1, optionally across worker threads
// (config.jobs; 0 = hardware concurrency). The sink, when set, receives every
// completed run's artifacts from the worker that produced it; per-run outputs
// are deterministic, so concurrent sinks writing one file per seed stay
// reproducible. Aggregation itself is sequential in seed order.
using RunSink = std::function<void(const RunArtifacts&)>;
BatchResult run_batch(const ExperimentConfig& config, const RunSink& sink = nullptr);

void write_timeline(std::ostream& out, const std::vector<TimelineRow>& rows);

// Fixed-width comparison table over the configured variants.
std::string render_report(const BatchResult& result);
// Machine-readable twin of the report (JSON).
std::string render_summary_json(const BatchResult& result);

}  // namespace cliquefilter
