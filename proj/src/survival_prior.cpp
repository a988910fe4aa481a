#include "cliquefilter/survival_prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliquefilter {

namespace {

void check_time(double t) {
  if (std::isnan(t) || t < 0.0) {
    throw std::domain_error("survival prior: time must be >= 0");
  }
}

}  // namespace

SurvivalPrior SurvivalPrior::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential prior: rate must be positive and finite");
  }
  SurvivalPrior p;
  p.kind_ = Kind::kExponential;
  p.rate_ = rate;
  return p;
}

SurvivalPrior SurvivalPrior::piecewise_linear_cdf(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("piecewise prior: need at least two knots");
  }
  if (knots.front().first != 0.0 || knots.front().second != 0.0) {
    throw std::invalid_argument("piecewise prior: first knot must be (0, 0)");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto& [t, p] = knots[i];
    if (!std::isfinite(t) || !std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("piecewise prior: knot probabilities must lie in [0, 1]");
    }
    if (i > 0) {
      if (t <= knots[i - 1].first) {
        throw std::invalid_argument("piecewise prior: knot times must be strictly increasing");
      }
      if (p < knots[i - 1].second) {
        throw std::invalid_argument("piecewise prior: knot probabilities must be non-decreasing");
      }
    }
  }
  if (knots.back().second != 1.0) {
    throw std::invalid_argument("piecewise prior: final knot probability must equal 1");
  }
  SurvivalPrior prior;
  prior.kind_ = Kind::kPiecewiseLinearCdf;
  prior.knots_ = std::move(knots);
  return prior;
}

double SurvivalPrior::cdf(double t) const {
  check_time(t);
  if (kind_ == Kind::kExponential) {
    return -std::expm1(-rate_ * t);
  }
  if (t >= knots_.back().first) return 1.0;
  // First knot strictly above t; t >= 0 = knots_[0].first so it != begin().
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double v, const auto& k) { return v < k.first; });
  auto lo = std::prev(hi);
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double SurvivalPrior::density(double t) const {
  check_time(t);
  if (kind_ == Kind::kExponential) {
    return rate_ * std::exp(-rate_ * t);
  }
  if (t >= knots_.back().first) return 0.0;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double v, const auto& k) { return v < k.first; });
  auto lo = std::prev(hi);
  return (hi->second - lo->second) / (hi->first - lo->first);
}

double SurvivalPrior::interval_mass(double a, double b) const {
  check_time(a);
  check_time(b);
  if (b < a) throw std::domain_error("interval_mass: requires a <= b");
  if (kind_ == Kind::kExponential) {
    // exp(-r a) - exp(-r b) without subtracting nearby exponentials.
    return std::exp(-rate_ * a) * -std::expm1(-rate_ * (b - a));
  }
  return std::max(0.0, cdf(b) - cdf(a));
}

double SurvivalPrior::log_tail(double t) const {
  check_time(t);
  if (kind_ == Kind::kExponential) {
    return -rate_ * t;
  }
  const double f = cdf(t);
  if (f >= 1.0) return -std::numeric_limits<double>::infinity();
  return std::log1p(-f);
}

double survival_cdf(const SurvivalPrior& prior, double t) { return prior.cdf(t); }

double survival_density(const SurvivalPrior& prior, double t) { return prior.density(t); }

double default_exponential_rate(double duration) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("default_exponential_rate: duration must be positive");
  }
  // median = duration / 2  =>  rate = ln 2 / (duration / 2)
  return 2.0 * M_LN2 / duration;
}

}  // namespace cliquefilter
