#pragma once

#include <stdexcept>
#include <string>

namespace cliquefilter {

// Invalid or inconsistent configuration (bad thresholds, missing fields, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// The filter's evidence collapsed to zero; the posterior is undefined.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric was requested on counts that cannot define it (e.g. TR == 0).
struct UndefinedMetricError : std::runtime_error {
  explicit UndefinedMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cliquefilter
