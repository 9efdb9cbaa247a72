#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghp/kernels.hpp"
#include "ghp/series.hpp"
#include "ghp/weight.hpp"

namespace ghp {

/// Normalizing constants of the generalized Hill statistic over k spacings:
///   a_n   = sum_{j<=k} f(j)/j            (centering)
///   sigma_n = sqrt(sum_{j<=k} (f(j)/j)^2) (standard deviation under Exp(1))
///   b_nf  = max_{j<=k} f(j)/j / sigma_n   (largest single-term share)
struct NormalizationSet {
  std::int64_t k = 0;
  double a_n = 0.0;
  double sigma_n = 0.0;
  double b_nf = 0.0;
};

NormalizationSet normalization(const WeightFunction& f, std::int64_t k,
                               Execution execution = Execution::parallel);

double a_n(const WeightFunction& f, std::int64_t k);
double sigma_n(const WeightFunction& f, std::int64_t k);
double b_nf(const WeightFunction& f, std::int64_t k);

/// Closed-form limit of the normalized covariance between power weights
/// j^tau1 and j^tau2: sqrt((2 tau1 - 1)(2 tau2 - 1)) / (tau1 + tau2 - 1).
/// tau = 1/2 is rejected separately: there the cross term grows like
/// (log k) k^{(2 tau - 1)/2} and no finite limit exists.
double power_class_covariance(double tau1, double tau2);

/// Finite-k normalized covariance
///   sum_{j<=k} f1(j) f2(j) / j^2 / (sigma_n(f1) sigma_n(f2)),
/// bounded by 1 through Cauchy-Schwarz.
double covariance_at(const WeightFunction& f1, const WeightFunction& f2, std::int64_t k);

/// Matrix of covariance_at over a family, row-major.
std::vector<double> covariance_matrix(std::span<const WeightFunction> weights,
                                      std::int64_t k);

/// E sum_j (Z_j(f1) - Z_j(f2))^2 = 2 - 2 covariance_at(f1, f2, k).
double semimetric_sq(const WeightFunction& f1, const WeightFunction& f2, std::int64_t k);

/// Random counterpart of semimetric_sq driven by one set of k standard
/// exponential draws: sum_j (f1(j)/(j sigma_n(f1)) - f2(j)/(j sigma_n(f2)))^2 (e_j - 1)^2.
double random_semimetric_sq(const WeightFunction& f1, const WeightFunction& f2,
                            std::int64_t k, std::span<const double> exp_draws);

}  // namespace ghp
