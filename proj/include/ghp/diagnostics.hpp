#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghp/estimators.hpp"
#include "ghp/kernels.hpp"
#include "ghp/tail_model.hpp"
#include "ghp/weight.hpp"

namespace ghp {

enum class ScaleMode { oracle, plugin };

std::string to_string(ScaleMode mode);
std::string to_string(Domain domain);

/// One Monte Carlo experiment on the studentized process.
struct McConfig {
  TailModel model = TailModel::pareto(1.0);
  std::vector<WeightFunction> weights;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  ScaleMode scale_mode = ScaleMode::oracle;
  /// Truncation tolerance for the limit-law reference draws.
  double limit_tol = 1e-6;
};

/// Studentized draws, one row per replicate. Frechet-branch values are
/// divided by the scale so that every column targets N(0,1) or L(f).
struct McDraws {
  std::size_t weights = 0;
  std::int64_t reps = 0;
  Domain domain = Domain::frechet;
  std::vector<double> values;  // reps x weights

  std::vector<double> column(std::size_t i) const;
};

/// Replicate r draws the top k+1 order statistics from stream (seed, r)
/// and evaluates the process once; the serial and parallel executions are
/// bit-identical.
McDraws mc_replicates(const McConfig& config, Execution execution = Execution::parallel);

struct WeightSummary {
  std::string f;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double ks_vs_normal = 0.0;
  std::optional<double> ks_vs_limit_law;
  /// Moments of the reference L(f) draws used for ks_vs_limit_law.
  std::optional<double> limit_mean;
  std::optional<double> limit_variance;
  std::optional<double> limit_skewness;
};

struct RhoPoint {
  std::int64_t k = 0;
  double rho_sq = 0.0;
  double limit = 0.0;
};

struct MonteCarloReport {
  // config echo
  std::string model;
  std::vector<std::string> f_list;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t R = 0;
  std::uint64_t seed = 0;
  ScaleMode scale_mode = ScaleMode::oracle;
  std::string domain;

  std::vector<WeightSummary> summaries;
  /// Largest per-weight KS distance to N(0,1).
  double ks_vs_normal = 0.0;
  /// Largest per-weight two-sample KS distance to L(f) over weights with
  /// A(2,f) finite.
  std::optional<double> ks_vs_limit_law;
  std::optional<double> ks_vs_exp1;
  std::optional<std::vector<double>> empirical_corr;
  std::optional<std::vector<RhoPoint>> rho_trace;
};

MonteCarloReport mc_studentized(const McConfig& config,
                                Execution execution = Execution::parallel);

/// Pearson correlation between two columns of the studentized draws.
double empirical_cov(const McDraws& draws, std::size_t a, std::size_t b);
double empirical_cov(const McConfig& config, std::size_t a, std::size_t b);

/// (k, rho_k^2, 2(1 - closed-form covariance)) along a k grid for two power
/// weights; the limit column requires both exponents above 1/2.
std::vector<RhoPoint> rho_convergence_trace(const WeightFunction& f1, const WeightFunction& f2,
                                            std::span<const std::int64_t> k_grid);

/// Pooled Malmquist spacings from reps independent order-statistic draws.
std::vector<double> pooled_malmquist(std::int64_t n, std::int64_t k, std::int64_t reps,
                                     std::uint64_t seed,
                                     Execution execution = Execution::parallel);

}  // namespace ghp
