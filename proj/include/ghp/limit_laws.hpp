#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghp/rng.hpp"
#include "ghp/weight.hpp"

namespace ghp {

/// How draws of L(f) = A(2,f)^{-1/2} sum_j f(j)/j (E_j - 1) handle the
/// terms past the truncation point J.
enum class TailTreatment {
  /// Replace sum_{j>J} by a centered normal with the exact tail variance.
  /// J is chosen so the third cumulant of the replaced part is <= tol;
  /// the variance of the draws is then exact.
  gaussian,
  /// Drop the tail. J is chosen so the dropped variance is <= tol.
  drop,
};

struct LimitLawSpec {
  WeightFunction f;
  double tol = 1e-6;
  TailTreatment treatment = TailTreatment::gaussian;
  std::int64_t truncation_J = 0;
  double a2 = 0.0;
  /// Normalized variance of the terms past J (what dropping them loses).
  double tail_var_bound = 0.0;
  /// Certified bound on the third cumulant of the terms past J; the only
  /// discrepancy left by the gaussian treatment.
  double tail_cumulant_bound = 0.0;
  /// c_j = f(j) / j / sqrt(A(2,f)), j = 1..J.
  std::vector<double> coeffs;
};

/// Builds the truncation certificate. Throws DomainError when A(2,f)
/// diverges, NumericError when J would exceed the supported maximum.
LimitLawSpec make_limit_law(const WeightFunction& f, double tol = 1e-6,
                            TailTreatment treatment = TailTreatment::gaussian);

/// One draw of L(f).
double draw_limit_L(const LimitLawSpec& spec, Rng& rng);

/// count draws taken sequentially from one stream.
std::vector<double> sample_limit_L(const LimitLawSpec& spec, RngStream stream,
                                   std::int64_t count);

/// count draws where draw i uses stream (seed, first_stream + i). The
/// parallel and serial executions return identical vectors.
std::vector<double> sample_limit_L_streams(const LimitLawSpec& spec, std::uint64_t seed,
                                           std::uint64_t first_stream, std::int64_t count,
                                           bool parallel = true);

/// kappa_m(L(f)) = (m-1)! A(m,f) A(2,f)^{-m/2}.
double cumulant_L(const WeightFunction& f, int order, double tol = 1e-12);

enum class MgfFormula {
  /// prod_j exp(-w_j) / (1 - w_j), w_j = sum_s t_s A(2,f_s)^{-1/2} f_s(j)/j:
  /// the joint MGF of (L(f_1), ..., L(f_S)).
  derived,
  /// prod_j exp(v_j) (1 - v_j), v_j = sum_s t_s f_s(j)/j, as it is
  /// sometimes quoted; kept to compare against the derived form.
  printed,
};

struct MgfValue {
  double value = 1.0;
  double log_value = 0.0;
  /// Bound on the absolute error of log_value.
  double error_bound = 0.0;
  std::int64_t explicit_terms = 0;
};

/// Joint MGF of the limit law at t. Terms past an adaptive J are summed
/// through the second and third power tails exactly and the remainder is
/// bounded; DomainError names the smallest j with w_j >= 1.
MgfValue mgf_L_joint(std::span<const WeightFunction> weights, std::span<const double> t,
                     double tol = 1e-13, MgfFormula formula = MgfFormula::derived);

/// Factor L (n x n, row-major, original index order) with L L^T = matrix for
/// a symmetric positive semidefinite matrix; pivots at or below tol end the
/// factorization and the remaining columns are zero.
struct PivotedCholesky {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<double> factor;
};

PivotedCholesky pivoted_cholesky(std::span<const double> matrix, std::size_t dim,
                                 double tol = 1e-12);

/// count draws of the centered Gaussian vector with covariance
/// [covariance_at(f_a, f_b, k)].
std::vector<std::vector<double>> gaussian_fidi_sample(std::span<const WeightFunction> weights,
                                                      std::int64_t k, RngStream stream,
                                                      std::int64_t count);

}  // namespace ghp
