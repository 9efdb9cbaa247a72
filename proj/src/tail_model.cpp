#include "ghp/tail_model.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ghp/error.hpp"
#include "ghp/format.hpp"

namespace ghp {

namespace {

constexpr double kQuadratureTolerance = 1e-9;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + " must be positive, got " + format_number(value));
  }
}

void require_log_defined(const SlowVaryFn& p) {
  if (p.is_power()) {
    if (!(p.sup_abs(1.0) < 1.0)) {
      throw ConfigError("perturbation p = " + p.describe() +
                        " reaches |p(u)| >= 1 on (0, 1]; log(1 + p(u)) is undefined");
    }
    return;
  }
  if (!(p.sup_abs(1.0) < 1.0)) {
    throw ConfigError("perturbation p = " + p.describe() + " reaches |p(u)| >= 1 on (0, 1]");
  }
}

double safe_exp(double log_u) { return std::exp(log_u); }

// int_u^1 b(t)/t dt for a power or custom b, addressed through log u.
double b_integral(const SlowVaryFn& b, double log_u) {
  if (b.is_zero()) return 0.0;
  if (b.is_power()) return b.c() * (-std::expm1(b.beta() * log_u)) / b.beta();
  return b.integral_over_t(std::max(safe_exp(log_u), 1e-300));
}

double p_at(const SlowVaryFn& p, double log_u) {
  if (p.is_zero()) return 0.0;
  if (p.is_power()) return p.c() * std::exp(p.beta() * log_u);
  return p(safe_exp(log_u));
}

std::string perturbation_spec(const char* prefix, const SlowVaryFn& fn) {
  std::string s = std::string(" ") + prefix + ".c=" + format_number(fn.c()) + " " + prefix +
                  ".beta=" + format_number(fn.beta());
  return s;
}

double gpd_from_log_t(double gamma, double log_t) {
  // t = -log q; x = (t^{-gamma} - 1) / gamma
  if (gamma == 0.0) return -log_t;
  return std::expm1(-gamma * log_t) / gamma;
}

}  // namespace

TailModel::TailModel(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrechetKaramata>) {
          require_positive(m.gamma, "frechet gamma");
          require_positive(m.c, "frechet c");
          require_log_defined(m.p);
        } else if constexpr (std::is_same_v<T, GumbelDeHaan>) {
          if (!std::isfinite(m.d)) throw ConfigError("gumbel d must be finite");
          require_positive(m.c, "gumbel c");
          require_log_defined(m.p);
        } else if constexpr (std::is_same_v<T, WeibullKaramata>) {
          require_positive(m.gamma, "weibull gamma");
          require_positive(m.c, "weibull c");
          if (!std::isfinite(m.y0)) throw ConfigError("weibull y0 must be finite");
          require_log_defined(m.p);
        } else {
          if (!std::isfinite(m.gamma)) throw ConfigError("gpd gamma must be finite");
        }
      },
      v_);
}

std::string TailModel::name() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrechetKaramata>) return "frechet";
        else if constexpr (std::is_same_v<T, GumbelDeHaan>) return "gumbel";
        else if constexpr (std::is_same_v<T, WeibullKaramata>) return "weibull";
        else return "gpd";
      },
      v_);
}

std::string TailModel::spec() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrechetKaramata>) {
          return "model=frechet gamma=" + format_number(m.gamma) + " c=" + format_number(m.c) +
                 perturbation_spec("p", m.p) + perturbation_spec("b", m.b);
        } else if constexpr (std::is_same_v<T, GumbelDeHaan>) {
          return "model=gumbel d=" + format_number(m.d) + " c=" + format_number(m.c) +
                 perturbation_spec("p", m.p) + perturbation_spec("b", m.b);
        } else if constexpr (std::is_same_v<T, WeibullKaramata>) {
          return "model=weibull gamma=" + format_number(m.gamma) + " y0=" +
                 format_number(m.y0) + " c=" + format_number(m.c) +
                 perturbation_spec("p", m.p) + perturbation_spec("b", m.b);
        } else {
          return "model=gpd gamma=" + format_number(m.gamma);
        }
      },
      v_);
}

std::optional<double> TailModel::oracle_scale(double u) const {
  return std::visit(
      [u](const auto& m) -> std::optional<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrechetKaramata> || std::is_same_v<T, WeibullKaramata>) {
          return m.gamma;
        } else if constexpr (std::is_same_v<T, GumbelDeHaan>) {
          return dehaan_scale(m, u);
        } else {
          return std::nullopt;
        }
      },
      v_);
}

std::optional<double> TailModel::upper_endpoint() const {
  if (const auto* w = std::get_if<WeibullKaramata>(&v_)) return w->y0;
  if (const auto* g = std::get_if<GpdModel>(&v_); g && g->gamma < 0.0) return -1.0 / g->gamma;
  return std::nullopt;
}

double dehaan_scale(const GumbelDeHaan& model, double u) {
  if (!(u > 0.0) || u > 1.0) throw DomainError("s(u) requires u in (0, 1]");
  const double log_u = std::log(u);
  return model.c * (1.0 + p_at(model.p, log_u)) * std::exp(b_integral(model.b, log_u));
}

double dehaan_integral(const GumbelDeHaan& model, double log_u, bool force_quadrature) {
  if (!(log_u <= 0.0)) throw DomainError("log u must be nonpositive");
  if (!force_quadrature && model.b.is_zero()) {
    // s(t) = c (1 + p(t)) integrates termwise against dt/t
    double value = -log_u;
    if (!model.p.is_zero()) {
      value += model.p.is_power() ? model.p.c() * (-std::expm1(model.p.beta() * log_u)) /
                                        model.p.beta()
                                  : model.p.integral_over_t(std::max(safe_exp(log_u), 1e-300));
    }
    return model.c * value;
  }
  // t = exp(-x): int_0^{-log u} s(exp(-x)) dx with a smooth integrand
  auto integrand = [&model](double x) {
    const double lt = -x;
    return model.c * (1.0 + p_at(model.p, lt)) * std::exp(b_integral(model.b, lt));
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, -log_u, 15, kQuadratureTolerance, &error);
  if (!(error <= 1e-8 * std::max(1.0, std::fabs(value)))) {
    throw NumericError("de Haan integral did not converge (error estimate " +
                       format_number(error) + ")");
  }
  return value;
}

double weibull_log_gap(const WeibullKaramata& model, double log_u) {
  if (!(log_u < 0.0)) throw DomainError("u must lie in (0, 1)");
  const double p = p_at(model.p, log_u);
  if (!(1.0 + p > 0.0)) throw ConfigError("1 + p(u) <= 0: model is invalid at this u");
  return std::log(model.c) + std::log1p(p) + model.gamma * log_u + b_integral(model.b, log_u);
}

double quantile_from_log_u(const TailModel& model, double log_u) {
  if (!(log_u < 0.0)) throw DomainError("u must lie in (0, 1)");
  return std::visit(
      [log_u](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FrechetKaramata>) {
          const double p = p_at(m.p, log_u);
          if (!(1.0 + p > 0.0)) throw ConfigError("1 + p(u) <= 0: model is invalid at this u");
          return std::log(m.c) + std::log1p(p) - m.gamma * log_u + b_integral(m.b, log_u);
        } else if constexpr (std::is_same_v<T, GumbelDeHaan>) {
          const double p = p_at(m.p, log_u);
          if (!(1.0 + p > 0.0)) throw ConfigError("1 + p(u) <= 0: model is invalid at this u");
          const double s = m.c * (1.0 + p) * std::exp(b_integral(m.b, log_u));
          return m.d - s + dehaan_integral(m, log_u);
        } else if constexpr (std::is_same_v<T, WeibullKaramata>) {
          return m.y0 - std::exp(weibull_log_gap(m, log_u));
        } else {
          const double u = std::exp(log_u);
          // log(-log(1 - u)) without cancellation for small u
          const double log_t = u < 1e-8 ? log_u + 0.5 * u : std::log(-std::log1p(-u));
          return gpd_from_log_t(m.gamma, log_t);
        }
      },
      model.variant());
}

double quantile_logF(const TailModel& model, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("u must lie in (0, 1), got " + format_number(u));
  return quantile_from_log_u(model, std::log(u));
}

double gpd_quantile(double gamma, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0, 1), got " + format_number(q));
  return gpd_from_log_t(gamma, std::log(-std::log(q)));
}

double gpd_cdf(double gamma, double x) {
  if (gamma == 0.0) return std::exp(-std::exp(-x));
  const double base = 1.0 + gamma * x;
  if (!(base > 0.0)) return gamma > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(gamma * x) / gamma));
}

TailModel parse_model_spec(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("model spec token '" + token + "' is not key=value");
    }
    const auto key = token.substr(0, eq);
    if (kv.count(key)) throw ConfigError("model spec repeats key '" + key + "'");
    kv[key] = token.substr(eq + 1);
  }
  if (!kv.count("model")) throw ConfigError("model spec lacks model=<frechet|gumbel|weibull|gpd>");
  const std::string kind = kv.at("model");

  std::set<std::string> allowed{"model"};
  if (kind == "frechet") allowed.insert({"gamma", "c", "p.c", "p.beta", "b.c", "b.beta"});
  else if (kind == "gumbel") allowed.insert({"d", "c", "p.c", "p.beta", "b.c", "b.beta"});
  else if (kind == "weibull") allowed.insert({"gamma", "y0", "c", "p.c", "p.beta", "b.c", "b.beta"});
  else if (kind == "gpd") allowed.insert("gamma");
  else throw ConfigError("unknown model '" + kind + "'");
  for (const auto& [key, value] : kv) {
    if (!allowed.count(key)) throw ConfigError("key '" + key + "' does not apply to model " + kind);
  }

  auto number = [&kv](const std::string& key, std::optional<double> fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      if (!fallback) throw ConfigError("model spec needs " + key + "=<value>");
      return *fallback;
    }
    double value = 0.0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ConfigError("cannot parse " + key + "='" + s + "' as a number");
    }
    return value;
  };
  auto perturbation = [&](const std::string& prefix) {
    return SlowVaryFn(number(prefix + ".c", 0.0), number(prefix + ".beta", 1.0));
  };

  if (kind == "frechet") {
    return TailModel(FrechetKaramata{number("gamma", std::nullopt), number("c", 1.0),
                                     perturbation("p"), perturbation("b")});
  }
  if (kind == "gumbel") {
    return TailModel(GumbelDeHaan{number("d", 0.0), number("c", 1.0), perturbation("p"),
                                  perturbation("b")});
  }
  if (kind == "weibull") {
    return TailModel(WeibullKaramata{number("gamma", std::nullopt), number("y0", 0.0),
                                     number("c", 1.0), perturbation("p"), perturbation("b")});
  }
  return TailModel(GpdModel{number("gamma", std::nullopt)});
}

}  // namespace ghp
