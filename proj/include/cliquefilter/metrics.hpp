#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cliquefilter {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  // Total scored timesteps; the partition tp+fp+tn+fn always equals tr.
  std::int64_t tr = 0;

  void add(bool predicted_positive, bool actually_positive);
  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool operator==(const ConfusionCounts&) const = default;
};

// (tp + tn) / tr; throws UndefinedMetricError when tr == 0.
double accuracy(const ConfusionCounts& counts);

// tp / (tp + fp); absent (not zero) when the filter never predicted positive.
std::optional<double> precision(const ConfusionCounts& counts);

// Mean over paired entries of removal_time / true_time. Entries with no
// recorded removal are passed as NaN and fall back to run_end. Throws
// std::invalid_argument on length mismatch, empty input, or true_time <= 0.
double mes_s(std::span<const double> removal_times, std::span<const double> true_times,
             double run_end);

}  // namespace cliquefilter
