#include "ghp/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghp/core.hpp"
#include "ghp/error.hpp"
#include "ghp/format.hpp"
#include "ghp/series.hpp"
#include "ghp/summation.hpp"

namespace ghp {

namespace {

constexpr std::int64_t kMaxTruncation = std::int64_t{1} << 24;
constexpr std::int64_t kMaxMgfTerms = std::int64_t{1} << 26;

double require_k1(const WeightFunction& f) {
  const auto a2 = ratio_series(f, 2, 1e-12);
  if (a2.divergent) {
    throw DomainError("A(2, " + f.label() +
                      ") = sum (f(j)/j)^2 diverges; the limit law L(f) does not exist");
  }
  return a2.value;
}

// -w - log(1 - w) for w < 1, accurate near 0.
double mgf_log_term(double w) {
  if (std::fabs(w) < 1e-3) {
    double out = 0.0;
    double power = w;
    for (int m = 2; m <= 7; ++m) {
      power *= w;
      out += power / m;
    }
    return out;
  }
  return -w - std::log1p(-w);
}

}  // namespace

LimitLawSpec make_limit_law(const WeightFunction& f, double tol, TailTreatment treatment) {
  if (!(tol > 0.0)) throw DomainError("limit-law tolerance must be positive");
  LimitLawSpec spec{f, tol, treatment, 0, 0.0, 0.0, 0.0, {}};
  spec.a2 = require_k1(f);
  const auto tail = ratio_tail(f);
  const PowerSeries squares = raise(tail->terms, 2);
  const PowerSeries cubes = raise(tail->terms, 3);
  const double a2_cubed_root = spec.a2 * std::sqrt(spec.a2);

  std::int64_t J = std::max<std::int64_t>(tail->start, 16);
  while (true) {
    const auto var = tail_sum(squares, J);
    const auto third = tail_sum(cubes, J);
    spec.tail_var_bound = (var->value + var->error_bound) / spec.a2;
    spec.tail_cumulant_bound = 2.0 * (third->value + third->error_bound) / a2_cubed_root;
    const double governing = treatment == TailTreatment::gaussian ? spec.tail_cumulant_bound
                                                                  : spec.tail_var_bound;
    if (governing <= tol) break;
    if (J >= kMaxTruncation) {
      throw NumericError("limit law for " + f.label() + " needs more than " +
                         std::to_string(kMaxTruncation) + " explicit terms at tolerance " +
                         format_number(tol));
    }
    J = std::min(J * 2, kMaxTruncation);
  }
  spec.truncation_J = J;
  if (treatment == TailTreatment::gaussian) {
    // the normal substitute carries the exact tail variance
    spec.tail_var_bound = tail_sum(squares, J)->value / spec.a2;
  } else {
    spec.tail_cumulant_bound = 0.0;
  }
  const double root = std::sqrt(spec.a2);
  spec.coeffs.resize(static_cast<std::size_t>(J));
  for (std::int64_t j = 1; j <= J; ++j) {
    spec.coeffs[static_cast<std::size_t>(j - 1)] = f(j) / static_cast<double>(j) / root;
  }
  return spec;
}

double draw_limit_L(const LimitLawSpec& spec, Rng& rng) {
  double total = 0.0;
  for (double c : spec.coeffs) total += c * (rng.exponential() - 1.0);
  if (spec.treatment == TailTreatment::gaussian && spec.tail_var_bound > 0.0) {
    total += std::sqrt(spec.tail_var_bound) * rng.normal();
  }
  return total;
}

std::vector<double> sample_limit_L(const LimitLawSpec& spec, RngStream stream,
                                   std::int64_t count) {
  if (count < 1) throw DomainError("draw count must be at least 1");
  Rng rng(stream);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& x : out) x = draw_limit_L(spec, rng);
  return out;
}

std::vector<double> sample_limit_L_streams(const LimitLawSpec& spec, std::uint64_t seed,
                                           std::uint64_t first_stream, std::int64_t count,
                                           bool parallel) {
  if (count < 1) throw DomainError("draw count must be at least 1");
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng({seed, first_stream + static_cast<std::uint64_t>(i)});
    out[static_cast<std::size_t>(i)] = draw_limit_L(spec, rng);
  }
  return out;
}

double cumulant_L(const WeightFunction& f, int order, double tol) {
  if (order < 2) throw DomainError("cumulant order must be at least 2");
  const double a2 = require_k1(f);
  const auto am = ratio_series(f, order, tol);
  if (am.divergent) {
    throw DomainError("A(" + std::to_string(order) + ", " + f.label() + ") diverges");
  }
  double factorial = 1.0;
  for (int i = 2; i < order; ++i) factorial *= i;
  return factorial * am.value * std::pow(a2, -0.5 * order);
}

MgfValue mgf_L_joint(std::span<const WeightFunction> weights, std::span<const double> t,
                     double tol, MgfFormula formula) {
  if (weights.size() != t.size()) {
    throw InputError("mgf needs one argument per weight: " + std::to_string(weights.size()) +
                     " weights, " + std::to_string(t.size()) + " arguments");
  }
  if (!(tol > 0.0)) throw DomainError("mgf tolerance must be positive");
  const std::size_t s = weights.size();
  std::vector<double> coef(s);
  PowerSeries series;
  PowerSeries series_abs;
  std::int64_t start = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const double a2 = require_k1(weights[i]);
    coef[i] = formula == MgfFormula::derived ? t[i] / std::sqrt(a2) : t[i];
    const auto tail = ratio_tail(weights[i]);
    start = std::max(start, tail->start);
    for (const auto& term : tail->terms) {
      series.push_back({coef[i] * term.coeff, term.exponent});
      series_abs.push_back({std::fabs(coef[i]) * term.coeff, term.exponent});
    }
  }
  const PowerSeries squares = raise(series, 2);
  const PowerSeries cubes = raise(series, 3);
  const PowerSeries fourth_abs = raise(series_abs, 4);

  auto w_at = [&](std::int64_t j) {
    double w = 0.0;
    for (std::size_t i = 0; i < s; ++i) w += coef[i] * weights[i](j) / static_cast<double>(j);
    return w;
  };

  CompensatedSum partial;
  std::int64_t done = 0;
  std::int64_t J = std::max<std::int64_t>(start, 64);
  MgfValue out;
  while (true) {
    for (std::int64_t j = done + 1; j <= J; ++j) {
      const double w = w_at(j);
      if (!(w < 1.0)) {
        throw DomainError("mgf argument outside the domain: w_j = " + format_number(w) +
                          " >= 1 at j = " + std::to_string(j));
      }
      partial += mgf_log_term(w);
    }
    done = J;
    const double sup_w = evaluate(series_abs, J + 1);
    if (sup_w < 0.5) {
      const auto q2 = tail_sum(squares, J);
      const auto q3 = tail_sum(cubes, J);
      const auto q4 = tail_sum(fourth_abs, J);
      const double remainder = q4->value / (4.0 * (1.0 - sup_w));
      const double error = remainder + 0.5 * q2->error_bound + q3->error_bound / 3.0 +
                           q4->error_bound;
      if (error <= tol || J >= kMaxMgfTerms) {
        out.log_value = partial.value() + 0.5 * q2->value + q3->value / 3.0;
        out.error_bound = error;
        out.explicit_terms = J;
        break;
      }
    } else if (J >= kMaxMgfTerms) {
      throw NumericError("mgf tail terms do not fall below 1/2 within the supported range");
    }
    J = std::min(J * 4, kMaxMgfTerms);
  }
  if (formula == MgfFormula::printed) out.log_value = -out.log_value;
  out.value = std::exp(out.log_value);
  return out;
}

PivotedCholesky pivoted_cholesky(std::span<const double> matrix, std::size_t dim, double tol) {
  if (matrix.size() != dim * dim) throw InputError("matrix size does not match its dimension");
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (std::fabs(matrix[a * dim + b] - matrix[b * dim + a]) > tol) {
        throw NumericError("covariance matrix is not symmetric");
      }
    }
  }
  PivotedCholesky out;
  out.dim = dim;
  out.factor.assign(dim * dim, 0.0);
  std::vector<double> residual(dim);
  std::vector<bool> used(dim, false);
  for (std::size_t i = 0; i < dim; ++i) residual[i] = matrix[i * dim + i];

  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t pivot = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!used[i] && (pivot == dim || residual[i] > residual[pivot])) pivot = i;
    }
    if (pivot == dim || residual[pivot] <= tol) break;
    used[pivot] = true;
    const double root = std::sqrt(residual[pivot]);
    out.factor[pivot * dim + r] = root;
    for (std::size_t i = 0; i < dim; ++i) {
      if (used[i]) continue;
      double value = matrix[i * dim + pivot];
      for (std::size_t c = 0; c < r; ++c) {
        value -= out.factor[i * dim + c] * out.factor[pivot * dim + c];
      }
      out.factor[i * dim + r] = value / root;
      residual[i] -= out.factor[i * dim + r] * out.factor[i * dim + r];
    }
    out.rank = r + 1;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!used[i] && residual[i] < -tol) {
      throw NumericError("covariance matrix is not positive semidefinite (residual " +
                         format_number(residual[i]) + ")");
    }
  }
  return out;
}

std::vector<std::vector<double>> gaussian_fidi_sample(std::span<const WeightFunction> weights,
                                                      std::int64_t k, RngStream stream,
                                                      std::int64_t count) {
  if (count < 1) throw DomainError("draw count must be at least 1");
  const std::size_t s = weights.size();
  const auto cov = covariance_matrix(weights, k);
  const auto chol = pivoted_cholesky(cov, s);
  Rng rng(stream);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(count), std::vector<double>(s));
  std::vector<double> z(chol.rank);
  for (auto& draw : out) {
    for (auto& v : z) v = rng.normal();
    for (std::size_t a = 0; a < s; ++a) {
      double x = 0.0;
      for (std::size_t r = 0; r < chol.rank; ++r) x += chol.factor[a * s + r] * z[r];
      draw[a] = x;
    }
  }
  return out;
}

}  // namespace ghp
