#include "cliquefilter/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cliquefilter/errors.hpp"

namespace cliquefilter {

void ConfusionCounts::add(bool predicted_positive, bool actually_positive) {
  if (predicted_positive && actually_positive) {
    ++tp;
  } else if (predicted_positive && !actually_positive) {
    ++fp;
  } else if (!predicted_positive && actually_positive) {
    ++fn;
  } else {
    ++tn;
  }
  ++tr;
}

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  tr += other.tr;
  return *this;
}

double accuracy(const ConfusionCounts& counts) {
  if (counts.tr == 0) throw UndefinedMetricError("accuracy undefined: no scored timesteps");
  return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.tr);
}

std::optional<double> precision(const ConfusionCounts& counts) {
  const std::int64_t denom = counts.tp + counts.fp;
  if (denom == 0) return std::nullopt;
  return static_cast<double>(counts.tp) / static_cast<double>(denom);
}

double mes_s(std::span<const double> removal_times, std::span<const double> true_times,
             double run_end) {
  if (removal_times.size() != true_times.size()) {
    throw std::invalid_argument("mes_s: removal and true time lists differ in length");
  }
  if (removal_times.empty()) throw std::invalid_argument("mes_s: needs at least one pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < removal_times.size(); ++i) {
    const double truth = true_times[i];
    if (!(truth > 0.0)) {
      throw std::invalid_argument("mes_s: true survival times must be positive (index " +
                                  std::to_string(i) + ")");
    }
    const double removal = std::isnan(removal_times[i]) ? run_end : removal_times[i];
    sum += removal / truth;
  }
  return sum / static_cast<double>(removal_times.size());
}

}  // namespace cliquefilter
