#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruinlab/errors.hpp"

namespace ruinlab {

// A non-negative magnitude carried in log space. `value` is exp(ln) or +inf
// once ln passes kOverflowLn; comparisons go through ln.
struct Quantity {
  static constexpr double kOverflowLn = 700.0;

  double ln = -std::numeric_limits<double>::infinity();

  static Quantity from_ln(double ln) { return Quantity{ln}; }
  static Quantity from_value(double v) {
    if (v < 0) throw DomainError("Quantity holds non-negative values only");
    return Quantity{std::log(v)};
  }

  bool overflowed() const { return ln > kOverflowLn; }
  double value() const { return overflowed() ? std::numeric_limits<double>::infinity() : std::exp(ln); }

  friend bool operator<(const Quantity& a, const Quantity& b) { return a.ln < b.ln; }
  friend bool operator>(const Quantity& a, const Quantity& b) { return b < a; }
};

inline Quantity operator+(const Quantity& a, const Quantity& b) {
  if (std::isinf(a.ln) && a.ln < 0) return b;
  if (std::isinf(b.ln) && b.ln < 0) return a;
  double hi = std::max(a.ln, b.ln), lo = std::min(a.ln, b.ln);
  return Quantity::from_ln(hi + std::log1p(std::exp(lo - hi)));
}

inline Quantity operator*(const Quantity& a, const Quantity& b) { return Quantity::from_ln(a.ln + b.ln); }

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  std::optional<double> lower;
  std::optional<double> upper;
  std::vector<std::pair<std::string, double>> scalars;  // signed plain values
  std::vector<std::pair<std::string, Quantity>> entries;
  std::vector<std::pair<std::string, bool>> flags;
  bool conditions_met = true;
  std::vector<std::string> notes;

  const Quantity& entry(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    throw DomainError("no entry " + key + " in report " + name);
  }
  bool flag(const std::string& key) const {
    for (const auto& [k, v] : flags)
      if (k == key) return v;
    throw DomainError("no flag " + key + " in report " + name);
  }
};

// Sandwich on the probability that a player starting at I ever reaches W in
// the fair game with n players: I/(W+n) <= P <= I/W.
inline Interval ruin_prob_bounds(double initial, double target, int n) {
  if (initial < 1) throw DomainError("initial weight must be >= 1");
  if (initial > target) throw DomainError("initial weight exceeds target: player already rich");
  if (n < 2) throw DomainError("n must be >= 2");
  return {initial / (target + n), initial / target};
}

// Upper bound on Pr{some player reaches W1 and fewer than two reach W2} for
// n independent players started at I. target2 may be +inf.
inline double pstar_upper(double initial, double target1, double target2, int n) {
  if (target1 > target2) throw DomainError("W1 must not exceed W2");
  if (initial > target1) throw DomainError("initial weight exceeds W1");
  if (n < 2) throw DomainError("n must be >= 2");
  const double miss2 = 1.0 - initial / (target2 + n);
  return std::pow(miss2, n) + (n * initial / target2) * std::pow(miss2, n - 1) -
         std::pow(1.0 - initial / target1, n);
}

inline double expected_drift(double t, int n, double c_inc, double c_dec = 1.0) {
  if (t < 0) throw DomainError("t must be >= 0");
  return t * (c_inc / n - c_dec);
}

struct SpUpper {
  Quantity product;  // (n-1)(1+1/(n-1))^{w0/k}
  Quantity stated;   // n e^{w0/(nk)}
  bool product_larger = false;
};

// Upper bounds on the expected time until some player goes bankrupt with k
// players left.
inline SpUpper sp_upper(int k, int n, double w0) {
  if (n < 2) throw DomainError("n must be >= 2");
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  if (w0 < k) throw DomainError("w0 must be >= k");
  SpUpper r;
  r.product = Quantity::from_ln(std::log(n - 1.0) + (w0 / k) * std::log1p(1.0 / (n - 1)));
  r.stated = Quantity::from_ln(std::log(static_cast<double>(n)) + w0 / (static_cast<double>(n) * k));
  r.product_larger = r.product > r.stated;
  return r;
}

struct St2Lower {
  Quantity value;
  bool conditions_met = false;  // c_inc/2 >= n
};

// Lower bound on the expected time for the total of two survivors to fall
// from x to y (x >= y) without a bankruptcy:
//   (n-2)/2 * (a^{(w0-y)/2} - a^{(w0-x)/2}) * (1 - e^-2),  a = 1 + 2/(n-2).
inline St2Lower st2_lower(double x, double y, int n, double w0, double c_inc) {
  if (n <= 2) throw DomainError("st2_lower needs n >= 3 (division by n-2)");
  if (y > x) throw DomainError("st2_lower needs y <= x");
  if (x > w0) throw DomainError("st2_lower needs x <= w0");
  St2Lower r;
  r.conditions_met = c_inc / 2.0 >= n;
  if (x == y) {
    r.value = Quantity::from_value(0.0);
    return r;
  }
  const double log_a = std::log1p(2.0 / (n - 2));
  const double hi = (w0 - y) / 2.0, lo = (w0 - x) / 2.0;
  r.value = Quantity::from_ln(std::log((n - 2) / 2.0) + hi * log_a + std::log(-std::expm1((lo - hi) * log_a)) +
                              std::log(-std::expm1(-2.0)));
  return r;
}

// Both sides of the S-to-half versus S-to-one comparison for the semilocal
// game with W0 = nI and c_dec = 1. The printed chain and its corrected
// exponent are evaluated side by side.
inline BoundReport semilocal_report(int n, double initial, double c_inc) {
  if (n < 3) throw DomainError("semilocal report needs n >= 3");
  BoundReport r;
  r.name = "semilocal";
  const double w0 = n * initial;
  const double nn = n;
  r.inputs = {{"n", nn}, {"initial", initial}, {"c_inc", c_inc}, {"w0", w0}};

  const double threshold = std::log(6.0) * n * (n - 2);
  const bool initial_ok = initial >= threshold;
  const bool c_inc_ok = c_inc >= 2.0 * n;
  r.conditions_met = initial_ok && c_inc_ok;
  r.flags.push_back({"initial_condition", initial_ok});
  r.flags.push_back({"c_inc_condition", c_inc_ok});
  r.entries.push_back({"initial_threshold", Quantity::from_value(threshold)});
  if (!initial_ok) r.notes.push_back("I < ln6 n(n-2)");
  if (!c_inc_ok) r.notes.push_back("c_inc < 2n");

  // S-to-one side: sum over k of the per-stage bankruptcy bounds.
  Quantity stated_sum, product_sum;
  for (int k = 2; k <= n; ++k) {
    SpUpper sp = sp_upper(k, n, w0);
    stated_sum = stated_sum + sp.stated;
    product_sum = product_sum + sp.product;
  }
  const Quantity two_term = Quantity::from_value(nn) * Quantity::from_ln(w0 / (2 * nn)) +
                            Quantity::from_value(nn * (n - 2)) * Quantity::from_ln(w0 / (3 * nn));
  const Quantity one_printed = Quantity::from_value(2 * nn) * Quantity::from_ln(w0 / 2);
  const Quantity one_corrected = Quantity::from_value(2 * nn) * Quantity::from_ln(w0 / (2 * nn));
  r.entries.push_back({"s_one_sum_product_form", product_sum});
  r.entries.push_back({"s_one_sum_stated_form", stated_sum});
  r.entries.push_back({"s_one_two_term", two_term});
  r.entries.push_back({"s_one_upper_printed", one_printed});
  r.entries.push_back({"s_one_upper_corrected", one_corrected});

  // S-to-half side.
  const double log_a = std::log1p(2.0 / (n - 2));
  const Quantity half_lemma = st2_lower(w0, w0 / 2, n, w0, c_inc).value;
  const double half_exponent = w0 / 2 * log_a;
  const Quantity half_intermediate = Quantity::from_ln(std::log((n - 2) / 2.0) + half_exponent +
                                                       std::log(-std::expm1(-half_exponent)) +
                                                       std::log(-std::expm1(-2.0)));
  const Quantity half_printed = Quantity::from_ln(std::log((n - 2) / 3.0) + w0 / (2.0 * (n - 2)));
  r.entries.push_back({"s_half_lower_lemma_a2", half_lemma});
  r.entries.push_back({"s_half_lower_intermediate", half_intermediate});
  r.entries.push_back({"s_half_lower_printed", half_printed});

  r.flags.push_back({"verdict_printed", half_printed > one_printed});
  r.flags.push_back({"verdict_corrected", half_printed > one_corrected});
  r.notes.push_back("verdict_printed compares (n-2)/3 e^{W0/(2(n-2))} with 2n e^{W0/2}; "
                    "verdict_corrected uses 2n e^{W0/(2n)}");
  return r;
}

}  // namespace ruinlab
