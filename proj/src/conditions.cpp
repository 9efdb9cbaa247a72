#include "ghp/conditions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ghp/error.hpp"
#include "ghp/format.hpp"
#include "ghp/kernels.hpp"

namespace ghp {

namespace {
constexpr int kSupGridPoints = 4096;
constexpr double kSupGridFloor = 1e-300;
}  // namespace

SlowVaryFn::SlowVaryFn(double c, double beta) : c_(c), beta_(beta) {
  if (!std::isfinite(c)) throw ConfigError("perturbation coefficient must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigError("perturbation exponent must be positive, got " + format_number(beta));
  }
}

SlowVaryFn SlowVaryFn::custom(std::function<double(double)> fn, std::string name) {
  SlowVaryFn out;
  out.fn_ = std::move(fn);
  out.name_ = std::move(name);
  return out;
}

double SlowVaryFn::operator()(double u) const {
  if (fn_) return fn_(u);
  if (c_ == 0.0) return 0.0;
  return c_ * std::pow(u, beta_);
}

double SlowVaryFn::sup_abs(double upper) const {
  if (!(upper > 0.0)) throw DomainError("sup range must be positive");
  if (!fn_) return std::fabs(c_) * std::pow(upper, beta_);
  double best = 0.0;
  const double lo = std::log(kSupGridFloor);
  const double hi = std::log(upper);
  for (int i = 0; i < kSupGridPoints; ++i) {
    const double u = std::exp(lo + (hi - lo) * i / (kSupGridPoints - 1));
    best = std::max(best, std::fabs(fn_(u)));
  }
  return best;
}

double SlowVaryFn::integral_over_t(double u) const {
  if (!(u > 0.0) || u > 1.0) throw DomainError("integral lower limit must lie in (0, 1]");
  if (!fn_) return c_ == 0.0 ? 0.0 : c_ * (1.0 - std::pow(u, beta_)) / beta_;
  // t = exp(-x) turns the 1/t weight into a smooth integrand on [0, -log u]
  auto integrand = [this](double x) { return fn_(std::exp(-x)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0,
                                                                       -std::log(u), 12, 1e-10);
}

std::string SlowVaryFn::describe() const {
  if (fn_) return name_;
  return format_number(c_) + "*u^" + format_number(beta_);
}

ConditionReport check_conditions(const SlowVaryFn& p, const SlowVaryFn& b,
                                 const WeightFunction& f, std::int64_t n, std::int64_t k,
                                 double lambda) {
  if (k < 1 || n < 1 || k > n) throw DomainError("need 1 <= k <= n");
  if (!(lambda > 1.0)) throw DomainError("lambda must exceed 1");
  const double upper = lambda * static_cast<double>(k) / static_cast<double>(n);
  if (upper > 1.0) {
    throw DomainError("lambda k / n = " + format_number(upper) + " exceeds 1");
  }
  ConditionReport out;
  out.g1 = p.sup_abs(upper);
  out.g2 = b.sup_abs(upper);
  out.d = std::max(out.g1, out.g2 * std::log(static_cast<double>(k)));

  const std::array<WeightFunction, 1> family{f};
  const auto ratios = ratio_sums(family, k);
  const auto plain = plain_sum(f, k);
  // sum f(j) / sigma_n(f), with both shifts folded back in
  const double load =
      plain.sum / std::sqrt(ratios.gram[0]) * std::exp(plain.shift - ratios.shift[0]);
  out.ratio_c1 = out.g1 * load;
  out.ratio_c2 = out.g2 * load;
  out.ratio_c3 = out.d * load;
  return out;
}

}  // namespace ghp
