#include "ghp/core.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ghp/error.hpp"
#include "ghp/format.hpp"
#include "ghp/summation.hpp"

namespace ghp {

NormalizationSet normalization(const WeightFunction& f, std::int64_t k, Execution execution) {
  const std::array<WeightFunction, 1> family{f};
  const auto sums = ratio_sums(family, k, execution);
  const double scale = std::exp(sums.shift[0]);
  const double root = std::sqrt(sums.gram[0]);
  NormalizationSet out;
  out.k = k;
  out.a_n = scale * sums.sum[0];
  out.sigma_n = scale * root;
  out.b_nf = sums.max[0] / root;
  return out;
}

double a_n(const WeightFunction& f, std::int64_t k) { return normalization(f, k).a_n; }

double sigma_n(const WeightFunction& f, std::int64_t k) { return normalization(f, k).sigma_n; }

double b_nf(const WeightFunction& f, std::int64_t k) { return normalization(f, k).b_nf; }

double power_class_covariance(double tau1, double tau2) {
  for (double tau : {tau1, tau2}) {
    if (tau == 0.5) {
      throw DomainError(
          "tau = 1/2 is the logarithmic boundary: the normalized cross term grows like "
          "(log k) k^((2 tau - 1)/2) and has no finite limit");
    }
    if (!(tau > 0.5)) {
      throw DomainError("closed-form covariance requires tau > 1/2, got " + format_number(tau));
    }
  }
  return std::sqrt((2.0 * tau1 - 1.0) * (2.0 * tau2 - 1.0)) / (tau1 + tau2 - 1.0);
}

std::vector<double> covariance_matrix(std::span<const WeightFunction> weights, std::int64_t k) {
  const auto sums = ratio_sums(weights, k);
  const std::size_t s = weights.size();
  std::vector<double> out(s * s);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      if (a == b) {
        out[a * s + b] = 1.0;
        continue;
      }
      const double value =
          sums.gram_at(a, b) / (std::sqrt(sums.gram_at(a, a)) * std::sqrt(sums.gram_at(b, b)));
      out[a * s + b] = std::min(value, 1.0);
    }
  }
  return out;
}

double covariance_at(const WeightFunction& f1, const WeightFunction& f2, std::int64_t k) {
  const std::array<WeightFunction, 2> family{f1, f2};
  const auto sums = ratio_sums(family, k);
  // identical ratio sequences give 1 exactly
  if (sums.gram_at(0, 1) == sums.gram_at(0, 0) && sums.gram_at(0, 0) == sums.gram_at(1, 1)) {
    return 1.0;
  }
  const double value =
      sums.gram_at(0, 1) / (std::sqrt(sums.gram_at(0, 0)) * std::sqrt(sums.gram_at(1, 1)));
  // Cauchy-Schwarz; rounding can push an exact 1 a few ulps above.
  if (value > 1.0 + 1e-12) {
    throw NumericError("normalized covariance exceeded 1: " + format_number(value));
  }
  return std::min(value, 1.0);
}

double semimetric_sq(const WeightFunction& f1, const WeightFunction& f2, std::int64_t k) {
  return 2.0 - 2.0 * covariance_at(f1, f2, k);
}

double random_semimetric_sq(const WeightFunction& f1, const WeightFunction& f2,
                            std::int64_t k, std::span<const double> exp_draws) {
  if (static_cast<std::int64_t>(exp_draws.size()) != k) {
    throw InputError("expected " + std::to_string(k) + " exponential draws, got " +
                     std::to_string(exp_draws.size()));
  }
  const std::array<WeightFunction, 2> family{f1, f2};
  const auto sums = ratio_sums(family, k);
  const double r1 = std::sqrt(sums.gram_at(0, 0));
  const double r2 = std::sqrt(sums.gram_at(1, 1));
  const bool log1 = sums.shift[0] != 0.0;
  const bool log2 = sums.shift[1] != 0.0;
  CompensatedSum total;
  for (std::int64_t j = 1; j <= k; ++j) {
    const double e = exp_draws[static_cast<std::size_t>(j - 1)];
    if (!(e >= 0.0)) throw InputError("exponential draws must be nonnegative");
    const double lj = std::log(static_cast<double>(j));
    const double z1 = log1 ? std::exp(f1.log_value(j) - lj - sums.shift[0]) / r1
                           : f1(j) / static_cast<double>(j) / r1;
    const double z2 = log2 ? std::exp(f2.log_value(j) - lj - sums.shift[1]) / r2
                           : f2(j) / static_cast<double>(j) / r2;
    const double diff = (z1 - z2) * (e - 1.0);
    total += diff * diff;
  }
  return total.value();
}

}  // namespace ghp
