#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ghp/weight.hpp"

namespace ghp {

/// A vanishing perturbation u -> c u^beta on (0, 1], the form taken by the
/// p(.) and b(.) functions of the quantile representations. A custom
/// callable may replace the power form; sups are then taken numerically on
/// a log-spaced grid and integrals by quadrature.
class SlowVaryFn {
 public:
  SlowVaryFn() = default;
  SlowVaryFn(double c, double beta);
  static SlowVaryFn zero() { return {}; }
  static SlowVaryFn custom(std::function<double(double)> fn, std::string name);

  double operator()(double u) const;

  /// sup_{0 < u <= upper} |value(u)|.
  double sup_abs(double upper) const;

  /// int_u^1 value(t)/t dt.
  double integral_over_t(double u) const;

  bool is_zero() const { return !fn_ && c_ == 0.0; }
  bool is_power() const { return !fn_; }
  double c() const { return c_; }
  double beta() const { return beta_; }
  std::string describe() const;

 private:
  double c_ = 0.0;
  double beta_ = 1.0;
  std::function<double(double)> fn_;
  std::string name_;
};

/// Second-order bias diagnostics for a given perturbation pair.
///   g1 = sup_{u <= lambda k/n} |p(u)|, g2 likewise for b,
///   d  = max(g1, g2 log k),
/// and the products entering the three bias conditions, each normalized by
/// sum_{j<=k} f(j) / sigma_n(f).
struct ConditionReport {
  double g1 = 0.0;
  double g2 = 0.0;
  double d = 0.0;
  double ratio_c1 = 0.0;
  double ratio_c2 = 0.0;
  double ratio_c3 = 0.0;
};

ConditionReport check_conditions(const SlowVaryFn& p, const SlowVaryFn& b,
                                 const WeightFunction& f, std::int64_t n, std::int64_t k,
                                 double lambda);

}  // namespace ghp
