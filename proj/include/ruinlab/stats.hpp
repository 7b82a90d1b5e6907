#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include <boost/math/distributions/normal.hpp>

#include "ruinlab/errors.hpp"

namespace ruinlab {

inline constexpr double kDefaultConfidence = 0.99;

// Two-sided normal critical value for a confidence level in (0, 1).
inline double normal_critical(double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
}

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t replicas = 0;
  std::int64_t censored = 0;
  std::uint64_t seed = 0;
  double level = kDefaultConfidence;

  bool covers(double x) const { return ci_low <= x && x <= ci_high; }
};

// Sample mean, standard error of the mean and normal-approximation CI.
// Two-pass variance; samples are summed in index order.
inline Estimate summarize(std::span<const double> samples, std::int64_t censored, std::uint64_t seed,
                          double level = kDefaultConfidence) {
  Estimate e;
  e.replicas = static_cast<std::int64_t>(samples.size());
  e.censored = censored;
  e.seed = seed;
  e.level = level;
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double x : samples) sum += x;
  e.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(samples.size() - 1) / static_cast<double>(samples.size()));
  }
  const double half = normal_critical(level) * e.std_error;
  e.ci_low = e.mean - half;
  e.ci_high = e.mean + half;
  return e;
}

}  // namespace ruinlab
