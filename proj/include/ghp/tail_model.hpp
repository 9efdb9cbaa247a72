#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ghp/conditions.hpp"

namespace ghp {

/// Frechet domain, Karamata form:
///   G^{-1}(1-u) = log c + log(1 + p(u)) - gamma log u + int_u^1 b(t)/t dt.
struct FrechetKaramata {
  double gamma = 1.0;
  double c = 1.0;
  SlowVaryFn p;
  SlowVaryFn b;
};

/// Gumbel domain, de Haan form:
///   G^{-1}(1-u) = d - s(u) + int_u^1 s(t)/t dt,
///   s(u) = c (1 + p(u)) exp(int_u^1 b(t)/t dt).
struct GumbelDeHaan {
  double d = 0.0;
  double c = 1.0;
  SlowVaryFn p;
  SlowVaryFn b;
};

/// Weibull domain, Karamata form with finite endpoint y0:
///   y0 - G^{-1}(1-u) = c (1 + p(u)) u^gamma exp(int_u^1 b(t)/t dt).
struct WeibullKaramata {
  double gamma = 1.0;
  double y0 = 0.0;
  double c = 1.0;
  SlowVaryFn p;
  SlowVaryFn b;
};

/// Y distributed as the extreme value law G_gamma(x) = exp(-(1 + gamma x)^{-1/gamma}).
struct GpdModel {
  double gamma = 0.0;
};

/// Quantile representation G^{-1}(1-u) of Y = log X. Construction validates
/// the parameters, including |p(u)| < 1 on (0, 1] so log(1 + p) is defined.
class TailModel {
 public:
  using Variant = std::variant<FrechetKaramata, GumbelDeHaan, WeibullKaramata, GpdModel>;

  explicit TailModel(Variant v);

  static TailModel pareto(double gamma) { return TailModel(FrechetKaramata{gamma, 1.0, {}, {}}); }

  const Variant& variant() const { return v_; }
  std::string name() const;

  /// Canonical key=value form accepted by parse_model_spec.
  std::string spec() const;

  /// The value the estimator branch centers on at u = k/n: gamma for the
  /// Frechet model (and the Weibull model through its transform), s(u) for
  /// the de Haan model. None for the GPD model.
  std::optional<double> oracle_scale(double u) const;

  /// Upper endpoint of Y, when finite.
  std::optional<double> upper_endpoint() const;

 private:
  Variant v_;
};

/// G^{-1}(1-u) for u in (0, 1).
double quantile_logF(const TailModel& model, double u);

/// Same quantile addressed through log u, for u too small to represent.
double quantile_from_log_u(const TailModel& model, double log_u);

/// log(y0 - G^{-1}(1-u)) for the Weibull model, given log u. Stays exact
/// where y0 - G^{-1}(1-u) itself rounds to zero.
double weibull_log_gap(const WeibullKaramata& model, double log_u);
/// int_u^1 s(t)/t dt for the de Haan model, given log u. Closed forms are
/// used when b vanishes unless force_quadrature is set.
double dehaan_integral(const GumbelDeHaan& model, double log_u, bool force_quadrature = false);

/// s(u) for the de Haan model.
double dehaan_scale(const GumbelDeHaan& model, double u);

/// x with G_gamma(x) = q; gamma = 0 reads (1 + gamma x)^{-1/gamma} as exp(-x).
double gpd_quantile(double gamma, double q);
double gpd_cdf(double gamma, double x);

/// Parses `model=<frechet|gumbel|weibull|gpd> key=value ...`. Keys: gamma, c,
/// d, y0, p.c, p.beta, b.c, b.beta. Omitted keys take c=1, d=0, y0=0 and
/// vanishing perturbations.
TailModel parse_model_spec(const std::string& text);

}  // namespace ghp
