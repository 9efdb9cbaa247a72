#pragma once

#include <functional>
#include <span>

namespace ghp {

double standard_normal_cdf(double x);
double exp1_cdf(double x);

/// sup_x |F_draws(x) - cdf(x)| for a continuous reference cdf.
double ks_one_sample(std::span<const double> draws, const std::function<double(double)>& cdf);

/// sup over the merged grid of |F_a(x) - F_b(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Sample moments used in the reports.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;  // m3 / m2^{3/2} with biased central moments
};

Moments moments(std::span<const double> draws);

/// Pearson correlation; DataError when either coordinate has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace ghp
