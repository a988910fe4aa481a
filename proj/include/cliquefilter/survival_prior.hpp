#pragma once

#include <utility>
#include <vector>

namespace cliquefilter {

/// Prior distribution over a clique's survival time.
///
/// The filter itself only ever consumes the CDF F(t), its interval masses and
/// the log survival tail log(1 - F(t)); the density exists for numerical
/// cross-checks. Two families are supported:
///
///   - Exponential(rate):          F(t) = 1 - exp(-rate * t)
///   - PiecewiseLinearCDF(knots):  F interpolates the knots linearly and is 1
///                                 beyond the last knot, so arbitrary empirical
///                                 priors can be injected.
///
/// Immutable after construction; safe to share across threads.
class SurvivalPrior {
 public:
  enum class Kind { kExponential, kPiecewiseLinearCdf };

  static SurvivalPrior exponential(double rate);

  /// Knots are (time, probability) pairs: times strictly increasing starting
  /// at (0, 0), probabilities non-decreasing, final probability exactly 1.
  static SurvivalPrior piecewise_linear_cdf(std::vector<std::pair<double, double>> knots);

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  /// F(t). Throws std::domain_error for t < 0 or NaN.
  double cdf(double t) const;

  /// dF/dt. Right-continuous at knots for the piecewise family.
  double density(double t) const;

  /// F(b) - F(a) computed without cancellation where the family allows it.
  /// Requires 0 <= a <= b.
  double interval_mass(double a, double b) const;

  /// log(1 - F(t)); -inf once all prior mass lies below t.
  double log_tail(double t) const;

 private:
  SurvivalPrior() = default;

  Kind kind_ = Kind::kExponential;
  double rate_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

/// Spec'd operation names, thin wrappers over the member functions.
double survival_cdf(const SurvivalPrior& prior, double t);
double survival_density(const SurvivalPrior& prior, double t);

/// Default rate choice: the prior median equals half the run duration, so the
/// prior stays uninformative relative to the experiment length.
double default_exponential_rate(double duration);

}  // namespace cliquefilter
