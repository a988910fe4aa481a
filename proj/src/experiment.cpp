#include "cliquefilter/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cliquefilter/errors.hpp"

namespace cliquefilter {

namespace {

// Shared by run_single and replay_stream so both emit identical timelines for
// identical streams.
struct StreamDrive {
  std::vector<VariantFilter> filters;
  std::vector<TimelineRow> timeline;

  explicit StreamDrive(const ExperimentConfig& config) {
    filters.reserve(config.variants.size());
    for (FilterVariant variant : config.variants) {
      filters.emplace_back(variant, config.variant_config(variant));
    }
  }

  std::vector<VariantFilter::StepResult> process(const CliqueStep& step) {
    std::vector<VariantFilter::StepResult> results;
    results.reserve(filters.size());
    for (auto& filter : filters) {
      const auto result = filter.process(step);
      timeline.push_back({result.time, result.clique_id, filter.variant(), result.posterior,
                          result.decision, result.suppressed});
      results.push_back(result);
    }
    return results;
  }
};

}  // namespace

RunArtifacts run_single(const ExperimentConfig& config, std::uint64_t seed) {
  RunArtifacts artifacts;
  artifacts.seed = seed;
  artifacts.run_end = config.duration_s;

  SimRun sim = simulate(seed, config.world_spec(), config.trajectory_spec(), config.sensor_spec());
  artifacts.scene = std::move(sim.scene);
  artifacts.stream = std::move(sim.stream);

  StreamDrive drive(config);
  artifacts.metrics.seed = seed;
  artifacts.metrics.variants.resize(config.variants.size());
  for (std::size_t vi = 0; vi < config.variants.size(); ++vi) {
    artifacts.metrics.variants[vi].variant = config.variants[vi];
  }

  for (const auto& step : artifacts.stream) {
    const SimObject* object = artifacts.scene.find_object(step.clique_id);
    if (object == nullptr) {
      throw std::runtime_error("detection stream references unknown clique " +
                               std::to_string(step.clique_id));
    }
    const bool actually_persisting = step.time <= object->survival_time;
    const auto results = drive.process(step);
    for (std::size_t vi = 0; vi < results.size(); ++vi) {
      const bool predicted_persisting = results[vi].posterior >= config.rho_h;
      artifacts.metrics.variants[vi].confusion.add(predicted_persisting, actually_persisting);
    }
  }
  artifacts.timeline = std::move(drive.timeline);

  for (std::size_t vi = 0; vi < config.variants.size(); ++vi) {
    auto& per_variant = artifacts.metrics.variants[vi];
    per_variant.removal_times.reserve(artifacts.scene.objects.size());
    per_variant.true_times.reserve(artifacts.scene.objects.size());
    for (const auto& object : artifacts.scene.objects) {
      const auto removal = drive.filters[vi].removal_time(object.object_id);
      per_variant.removal_times.push_back(
          removal.has_value() ? *removal : std::numeric_limits<double>::quiet_NaN());
      per_variant.true_times.push_back(object.survival_time);
    }
  }
  return artifacts;
}

std::vector<TimelineRow> replay_stream(const ExperimentConfig& config,
                                       const DetectionStream& stream) {
  StreamDrive drive(config);
  for (const auto& step : stream) drive.process(step);
  return std::move(drive.timeline);
}

BatchResult run_batch(const ExperimentConfig& config, const RunSink& sink) {
  BatchResult result;
  result.runs = config.runs;
  result.base_seed = config.base_seed;
  result.run_end = config.duration_s;
  result.per_run.resize(config.runs);

  unsigned workers = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(config.runs));

  std::atomic<int> next_run{0};
  std::mutex failure_mutex;
  std::optional<std::uint64_t> failed_seed;
  std::exception_ptr failure;

  const auto worker = [&]() {
    while (true) {
      const int run_index = next_run.fetch_add(1);
      if (run_index >= config.runs) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run_index);
      try {
        RunArtifacts artifacts = run_single(config, seed);
        if (sink) sink(artifacts);
        result.per_run[run_index] = std::move(artifacts.metrics);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
          failed_seed = seed;
        }
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw std::runtime_error("run with seed " + std::to_string(*failed_seed) +
                               " failed: " + e.what());
    }
  }

  // Sequential reduction in seed order keeps the report bit-stable.
  result.aggregates.resize(config.variants.size());
  for (std::size_t vi = 0; vi < config.variants.size(); ++vi) {
    auto& aggregate = result.aggregates[vi];
    aggregate.variant = config.variants[vi];
    double accuracy_sum = 0.0;
    int accuracy_runs = 0;
    double precision_sum = 0.0;
    int precision_runs = 0;
    std::vector<double> removal_times;
    std::vector<double> true_times;
    for (const auto& run : result.per_run) {
      const auto& per_variant = run.variants[vi];
      aggregate.pooled += per_variant.confusion;
      if (per_variant.confusion.tr > 0) {
        accuracy_sum += accuracy(per_variant.confusion);
        ++accuracy_runs;
      }
      if (const auto p = precision(per_variant.confusion)) {
        precision_sum += *p;
        ++precision_runs;
      }
      removal_times.insert(removal_times.end(), per_variant.removal_times.begin(),
                           per_variant.removal_times.end());
      true_times.insert(true_times.end(), per_variant.true_times.begin(),
                        per_variant.true_times.end());
    }
    if (accuracy_runs == 0) {
      throw UndefinedMetricError("accuracy undefined for every run of variant " +
                                 std::string(to_string(aggregate.variant)));
    }
    aggregate.mean_accuracy = accuracy_sum / accuracy_runs;
    if (precision_runs > 0) aggregate.mean_precision = precision_sum / precision_runs;
    aggregate.pooled_precision = precision(aggregate.pooled);
    aggregate.mes_s_value = mes_s(removal_times, true_times, result.run_end);
  }
  return result;
}

void write_timeline(std::ostream& out, const std::vector<TimelineRow>& rows) {
  out << "# cliquefilter timeline v1\n";
  out << "# time\tclique\tvariant\tposterior\tdecision\tsuppressed\n";
  char buf[256];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g\t%lld\t%s\t%.17g\t%s\t%d\n", row.time,
                  static_cast<long long>(row.clique_id),
                  std::string(to_string(row.variant)).c_str(), row.posterior,
                  std::string(to_string(row.decision)).c_str(), row.suppressed ? 1 : 0);
    out << buf;
  }
}

std::string render_report(const BatchResult& result) {
  std::ostringstream out;
  out << "persistence filter comparison\n";
  out << "runs: " << result.runs << "  base seed: " << result.base_seed
      << "  run end: " << format_double(result.run_end) << "\n\n";
  out << std::left << std::setw(9) << "variant" << std::right << std::setw(10) << "accuracy"
      << std::setw(11) << "precision" << std::setw(9) << "mes/s" << std::setw(10) << "tp"
      << std::setw(10) << "fp" << std::setw(10) << "tn" << std::setw(10) << "fn" << std::setw(10)
      << "tr"
      << "\n";
  for (const auto& aggregate : result.aggregates) {
    out << std::left << std::setw(9) << to_string(aggregate.variant) << std::right << std::fixed
        << std::setprecision(4) << std::setw(10) << aggregate.mean_accuracy;
    if (aggregate.mean_precision.has_value()) {
      out << std::setw(11) << *aggregate.mean_precision;
    } else {
      out << std::setw(11) << "n/a";
    }
    out << std::setw(9) << std::setprecision(3) << aggregate.mes_s_value;
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6) << std::setw(10) << aggregate.pooled.tp << std::setw(10)
        << aggregate.pooled.fp << std::setw(10) << aggregate.pooled.tn << std::setw(10)
        << aggregate.pooled.fn << std::setw(10) << aggregate.pooled.tr << "\n";
  }
  out << "\nprecision is averaged over runs where it is defined; mes/s treats a\n"
         "clique the filter never removed as removed at run end.\n";
  return out.str();
}

std::string render_summary_json(const BatchResult& result) {
  nlohmann::ordered_json summary;
  summary["runs"] = result.runs;
  summary["base_seed"] = result.base_seed;
  summary["run_end"] = result.run_end;
  for (const auto& aggregate : result.aggregates) {
    nlohmann::ordered_json entry;
    entry["mean_accuracy"] = aggregate.mean_accuracy;
    if (aggregate.mean_precision.has_value()) {
      entry["mean_precision"] = *aggregate.mean_precision;
    } else {
      entry["mean_precision"] = nullptr;
    }
    if (aggregate.pooled_precision.has_value()) {
      entry["pooled_precision"] = *aggregate.pooled_precision;
    } else {
      entry["pooled_precision"] = nullptr;
    }
    entry["mes_s"] = aggregate.mes_s_value;
    entry["confusion"] = {{"tp", aggregate.pooled.tp}, {"fp", aggregate.pooled.fp},
                          {"tn", aggregate.pooled.tn}, {"fn", aggregate.pooled.fn},
                          {"tr", aggregate.pooled.tr}};
    summary["variants"][std::string(to_string(aggregate.variant))] = entry;
  }
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& run : result.per_run) {
    nlohmann::ordered_json entry;
    entry["seed"] = run.seed;
    for (const auto& per_variant : run.variants) {
      nlohmann::ordered_json variant_entry;
      const auto& c = per_variant.confusion;
      variant_entry["confusion"] = {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn},
                                    {"tr", c.tr}};
      if (c.tr > 0) variant_entry["accuracy"] = accuracy(c);
      if (const auto p = precision(c)) variant_entry["precision"] = *p;
      nlohmann::ordered_json removals = nlohmann::ordered_json::array();
      for (double removal : per_variant.removal_times) {
        if (std::isnan(removal)) {
          removals.push_back(nullptr);
        } else {
          removals.push_back(removal);
        }
      }
      variant_entry["removal_times"] = removals;
      variant_entry["true_times"] = per_variant.true_times;
      entry["variants"][std::string(to_string(per_variant.variant))] = variant_entry;
    }
    runs.push_back(entry);
  }
  summary["per_run"] = runs;
  return summary.dump(2) + "\n";
}

}  // namespace cliquefilter
