#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ghp/weight.hpp"

namespace ghp {

/// A value together with a certified bound on its absolute error.
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
};

/// sum_{j > J} j^{-s} for s > 1, by an explicit partial sum up to a cutoff
/// followed by Euler-Maclaurin with six Bernoulli corrections. The error
/// bound is the magnitude of the first omitted correction.
SeriesValue zeta_tail(double s, std::int64_t J);

/// x^m by repeated multiplication (exact under power-of-two scaling of x).
double integer_power(double x, int m);

/// A finite sum of power terms, sum_i coeff_i * j^{exponent_i}.
using PowerSeries = std::vector<PowerTerm>;

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b);
PowerSeries raise(const PowerSeries& a, int m);
double evaluate(const PowerSeries& a, std::int64_t j);

/// sum_{j > J} of the series; nullopt when some exponent is >= -1.
std::optional<SeriesValue> tail_sum(const PowerSeries& a, std::int64_t J);

/// The ratio sequence f(j)/j as a power series valid past tail.start.
std::optional<PowerTail> ratio_tail(const WeightFunction& f);

struct SeriesSum {
  bool divergent = false;
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t partial_terms = 0;
};

/// A(m, f) = sum_{j >= 1} (f(j)/j)^m. Divergence is decided exactly from the
/// tail exponents; otherwise the value carries error_bound <= tol.
///
/// Throws UnsupportedError for a tabulated weight without an extension rule.
SeriesSum ratio_series(const WeightFunction& f, int m, double tol = 1e-9);

}  // namespace ghp
