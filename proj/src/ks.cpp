#include "ghp/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ghp/error.hpp"
#include "ghp/summation.hpp"

namespace ghp {

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

double ks_one_sample(std::span<const double> draws, const std::function<double(double)>& cdf) {
  if (draws.empty()) throw InputError("KS statistic needs at least one draw");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    sup = std::max({sup, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(sup, 0.0, 1.0);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("KS statistic needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    sup = std::max(sup, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return sup;
}

Moments moments(std::span<const double> draws) {
  if (draws.empty()) throw InputError("moments need at least one draw");
  const double n = static_cast<double>(draws.size());
  CompensatedSum sum;
  for (double x : draws) sum += x;
  Moments out;
  out.mean = sum.value() / n;
  CompensatedSum m2;
  CompensatedSum m3;
  for (double x : draws) {
    const double d = x - out.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double c2 = m2.value() / n;
  out.variance = draws.size() > 1 ? m2.value() / (n - 1.0) : 0.0;
  out.skewness = c2 > 0.0 ? (m3.value() / n) / std::pow(c2, 1.5) : 0.0;
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InputError("correlation needs two samples of equal length >= 2");
  }
  const auto ma = moments(a);
  const auto mb = moments(b);
  CompensatedSum cross;
  for (std::size_t i = 0; i < a.size(); ++i) cross += (a[i] - ma.mean) * (b[i] - mb.mean);
  if (!(ma.variance > 0.0) || !(mb.variance > 0.0)) {
    throw DataError("correlation undefined: a coordinate has zero variance");
  }
  const double cov = cross.value() / static_cast<double>(a.size() - 1);
  return std::clamp(cov / std::sqrt(ma.variance * mb.variance), -1.0, 1.0);
}

}  // namespace ghp
