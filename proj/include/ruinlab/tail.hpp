#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "ruinlab/errors.hpp"
#include "ruinlab/parallel.hpp"

namespace ruinlab {

inline const double kAnticbAlpha = std::sqrt(std::numbers::pi / 12.0);

// Pr{S <= s} for S ~ Binomial(t, 1/n).
//
// Terms come from p_{i+1} = p_i (t-i) / ((i+1)(n-1)) carried in linear space
// with a separate log scale, anchored at log p_0 = t log(1 - 1/n). Relative
// error per term stays near i * eps instead of growing with |log p_i|.
inline double binom_lower_tail(std::int64_t t, std::int64_t n, std::int64_t s) {
  if (t < 1) throw DomainError("t must be >= 1");
  if (n < 2) throw DomainError("n must be >= 2");
  if (s < 0) return 0.0;
  if (s >= t) return 1.0;
  const double log_p0 = static_cast<double>(t) * std::log1p(-1.0 / static_cast<double>(n));
  const double inv_nm1 = 1.0 / static_cast<double>(n - 1);
  double ratio = 1.0;   // p_i / p_0 / exp(scale)
  double scale = 0.0;
  double base = std::exp(log_p0);
  double sum = 0.0, carry = 0.0;  // Neumaier summation
  for (std::int64_t i = 0; i <= s; ++i) {
    if (i > 0) {
      ratio *= static_cast<double>(t - i + 1) / static_cast<double>(i) * inv_nm1;
      if (ratio > 1e200) {
        scale += std::log(ratio);
        ratio = 1.0;
        base = std::exp(log_p0 + scale);
      }
    }
    const double term = base * ratio;
    const double next = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  return std::min(1.0, sum + carry);
}

struct TailResult {
  std::int64_t t = 0;
  std::int64_t n = 0;
  double alpha = kAnticbAlpha;
  double threshold = 0.0;   // t/n - alpha sqrt(t/n)
  std::int64_t s_max = 0;   // floor(threshold), may be negative
  double prob = 0.0;        // Pr{S <= s_max}
  bool holds = false;       // prob > 1/3
  double prob_above_mean = 0.0;  // Pr{S > t/n}
  double middle_band = 0.0;      // Pr{t/n >= S > threshold}
  bool median_piece_ok = false;  // Pr{S > t/n} <= 1/2
};

inline TailResult anticb_check(std::int64_t t, std::int64_t n, double alpha = kAnticbAlpha) {
  if (t < 1) throw DomainError("t must be >= 1");
  if (n < 2) throw DomainError("n must be >= 2");
  if (!(alpha > 0)) throw DomainError("alpha must be > 0");
  TailResult r;
  r.t = t;
  r.n = n;
  r.alpha = alpha;
  const double mean = static_cast<double>(t) / static_cast<double>(n);
  r.threshold = mean - alpha * std::sqrt(mean);
  r.s_max = static_cast<std::int64_t>(std::floor(r.threshold));
  r.prob = binom_lower_tail(t, n, r.s_max);
  r.holds = r.prob > 1.0 / 3.0;
  // floor(t/n) in integers so t/n landing on an integer is exact
  const double at_mean = binom_lower_tail(t, n, t / n);
  r.prob_above_mean = 1.0 - at_mean;
  r.middle_band = at_mean - r.prob;
  r.median_piece_ok = r.prob_above_mean <= 0.5;
  return r;
}

struct TailRegion {
  std::int64_t t_max = 0;
  std::int64_t n_max = 0;
  double alpha = kAnticbAlpha;
  std::vector<TailResult> cells;  // row-major: n outer (2..n_max), t inner (1..t_max)
  std::int64_t failing = 0;
  std::int64_t largest_failing_t = 0;  // 0 when nothing fails
  std::vector<std::int64_t> failing_per_n;  // index n-2
};

inline constexpr std::int64_t kMaxRegionCells = 10'000'000;

inline TailRegion anticb_region(std::int64_t t_max, std::int64_t n_max, double alpha = kAnticbAlpha) {
  if (t_max < 2 || n_max < 2) throw DomainError("t_max and n_max must be >= 2");
  const std::int64_t rows = n_max - 1;
  if (rows > kMaxRegionCells / t_max) throw DomainError("grid exceeds 10^7 cells");
  TailRegion region;
  region.t_max = t_max;
  region.n_max = n_max;
  region.alpha = alpha;
  region.cells.resize(static_cast<std::size_t>(rows * t_max));
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t row) {
    const std::int64_t n = static_cast<std::int64_t>(row) + 2;
    for (std::int64_t t = 1; t <= t_max; ++t)
      region.cells[row * static_cast<std::size_t>(t_max) + static_cast<std::size_t>(t - 1)] =
          anticb_check(t, n, alpha);
  });
  region.failing_per_n.assign(static_cast<std::size_t>(rows), 0);
  for (const TailResult& c : region.cells) {
    if (c.holds) continue;
    ++region.failing;
    ++region.failing_per_n[static_cast<std::size_t>(c.n - 2)];
    region.largest_failing_t = std::max(region.largest_failing_t, c.t);
  }
  return region;
}

}  // namespace ruinlab
