#include "ghp/validate.hpp"

#include <cmath>

#include "ghp/core.hpp"
#include "ghp/error.hpp"
#include "ghp/format.hpp"
#include "ghp/ks.hpp"
#include "ghp/limit_laws.hpp"

namespace ghp {

namespace {

Gate below(std::string name, double value, double threshold, bool binding) {
  return {std::move(name), value, "<", threshold, value < threshold, binding};
}

Gate at_most(std::string name, double value, double threshold, bool binding) {
  return {std::move(name), value, "<=", threshold, value <= threshold, binding};
}

McConfig mc_config(const ValidationConfig& c, std::vector<WeightFunction> default_weights,
                   std::int64_t n, std::int64_t k, std::int64_t reps) {
  McConfig out;
  out.model = c.model.value_or(TailModel::pareto(1.0));
  out.weights = c.weights.value_or(std::move(default_weights));
  out.n = c.n.value_or(n);
  out.k = c.k.value_or(k);
  out.reps = c.reps.value_or(reps);
  out.seed = c.seed;
  out.scale_mode = c.scale_mode;
  out.limit_tol = c.limit_tol;
  if (out.reps < 2) throw ConfigError("replication count must be at least 2");
  return out;
}

ValidationOutcome normality(const ValidationConfig& c, Execution execution) {
  const auto config = mc_config(c, {WeightFunction::power(1.0)}, 10'000, 300, 2000);
  ValidationOutcome out{mc_studentized(config, execution), {}};
  const bool binding = config.scale_mode == ScaleMode::oracle;
  for (const auto& s : out.report.summaries) {
    out.gates.push_back(below("ks_vs_normal[" + s.f + "]", s.ks_vs_normal, c.gate.value_or(0.05),
                              binding));
  }
  return out;
}

ValidationOutcome limit_law(const ValidationConfig& c, Execution execution) {
  const auto config = mc_config(c, {WeightFunction::power(0.25)}, 10'000, 300, 2000);
  ValidationOutcome out{mc_studentized(config, execution), {}};
  const bool binding = config.scale_mode == ScaleMode::oracle;
  for (std::size_t i = 0; i < out.report.summaries.size(); ++i) {
    const auto& s = out.report.summaries[i];
    if (!s.ks_vs_limit_law) {
      throw ConfigError("weight " + s.f + " has no limit law L(f): A(2,f) diverges");
    }
    const double kappa3 = cumulant_L(config.weights[i], 3);
    out.gates.push_back(
        below("ks_vs_limit_law[" + s.f + "]", *s.ks_vs_limit_law, c.gate.value_or(0.06), binding));
    out.gates.push_back(below("limit_mean[" + s.f + "]", std::fabs(*s.limit_mean), 0.07, true));
    out.gates.push_back(
        below("limit_variance_error[" + s.f + "]", std::fabs(*s.limit_variance - 1.0), 0.05, true));
    out.gates.push_back(below("limit_skewness_error[" + s.f + "]",
                              std::fabs(*s.limit_skewness - kappa3), 0.1, true));
  }
  return out;
}

ValidationOutcome covariance(const ValidationConfig& c, Execution execution) {
  const auto config = mc_config(c, {WeightFunction::power(1.0), WeightFunction::power(0.75)},
                                100'000, 1000, 2000);
  if (config.weights.size() != 2) throw ConfigError("covariance mode takes exactly two weights");
  if (config.reps < 30) throw ConfigError("covariance mode needs at least 30 replicates");
  ValidationOutcome out{mc_studentized(config, execution), {}};
  const bool binding = config.scale_mode == ScaleMode::oracle;
  const double corr = (*out.report.empirical_corr)[1];
  const auto& f1 = config.weights[0];
  const auto& f2 = config.weights[1];
  if (f1.label() == f2.label()) {
    out.gates.push_back({"empirical_corr[equal pair]", corr, "==", 1.0, corr == 1.0, binding});
    return out;
  }
  const auto t1 = f1.power_exponent();
  const auto t2 = f2.power_exponent();
  if (!t1 || !t2) throw ConfigError("covariance mode compares against the power-class limit");
  const double target = power_class_covariance(*t1, *t2);
  out.gates.push_back(at_most("|empirical_corr - " + format_number(target) + "|",
                              std::fabs(corr - target), c.gate.value_or(0.03), binding));
  return out;
}

ValidationOutcome malmquist(const ValidationConfig& c, Execution execution) {
  const std::int64_t n = c.n.value_or(10'000);
  const std::int64_t k = c.k.value_or(100);
  const std::int64_t reps = c.reps.value_or(100);
  if (reps < 1) throw ConfigError("replication count must be at least 1");
  const auto pooled = pooled_malmquist(n, k, reps, c.seed, execution);
  const auto m = moments(pooled);
  ValidationOutcome out;
  auto& r = out.report;
  r.model = "uniform order statistics";
  r.f_list = {"malmquist"};
  r.n = n;
  r.k = k;
  r.R = reps;
  r.seed = c.seed;
  r.domain = "exp1";
  r.ks_vs_exp1 = ks_one_sample(pooled, exp1_cdf);
  WeightSummary s;
  s.f = "malmquist";
  s.mean = m.mean;
  s.variance = m.variance;
  s.skewness = m.skewness;
  s.ks_vs_normal = ks_one_sample(pooled, standard_normal_cdf);
  r.summaries.push_back(s);
  r.ks_vs_normal = s.ks_vs_normal;
  out.gates.push_back(below("ks_vs_exp1", *r.ks_vs_exp1, c.gate.value_or(0.02), true));
  out.gates.push_back(
      {"pooled_mean", m.mean, "in", 0.03, std::fabs(m.mean - 1.0) <= 0.03, true});
  return out;
}

ValidationOutcome rho(const ValidationConfig& c) {
  const auto weights =
      c.weights.value_or(std::vector{WeightFunction::power(0.9), WeightFunction::power(0.6)});
  if (weights.size() != 2) throw ConfigError("rho mode takes exactly two weights");
  std::vector<std::int64_t> grid = c.k_grid;
  if (grid.empty()) grid = {100, 1000, 10'000, 100'000};
  ValidationOutcome out;
  auto& r = out.report;
  r.model = "none";
  r.f_list = {weights[0].label(), weights[1].label()};
  r.k = grid.back();
  r.seed = c.seed;
  r.domain = "deterministic";
  r.rho_trace = rho_convergence_trace(weights[0], weights[1], grid);
  const auto& trace = *r.rho_trace;
  const double final_error = std::fabs(trace.back().rho_sq - trace.back().limit);
  out.gates.push_back(below("|rho_sq - limit| at k=" + std::to_string(trace.back().k),
                            final_error, c.gate.value_or(0.01), true));
  double worst_step = -INFINITY;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double prev = std::fabs(trace[i - 1].rho_sq - trace[i - 1].limit);
    const double cur = std::fabs(trace[i].rho_sq - trace[i].limit);
    worst_step = std::max(worst_step, cur - prev);
  }
  if (trace.size() > 1) {
    out.gates.push_back(below("largest error increase along k grid", worst_step, 0.0, true));
  }
  return out;
}

}  // namespace

std::optional<ValidationMode> parse_validation_mode(const std::string& text) {
  if (text == "normality") return ValidationMode::normality;
  if (text == "limit-law") return ValidationMode::limit_law;
  if (text == "covariance") return ValidationMode::covariance;
  if (text == "malmquist") return ValidationMode::malmquist;
  if (text == "rho") return ValidationMode::rho;
  return std::nullopt;
}

std::string to_string(ValidationMode mode) {
  switch (mode) {
    case ValidationMode::normality: return "normality";
    case ValidationMode::limit_law: return "limit-law";
    case ValidationMode::covariance: return "covariance";
    case ValidationMode::malmquist: return "malmquist";
    case ValidationMode::rho: return "rho";
  }
  return "unknown";
}

std::string Gate::describe() const {
  std::string out = (passed ? "PASS " : "FAIL ") + name + " = " + format_number(value) + " " +
                    relation + " " + format_number(threshold);
  if (!binding) out += " (not binding: plugin scale)";
  return out;
}

bool ValidationOutcome::passed() const { return first_failure() == nullptr; }

const Gate* ValidationOutcome::first_failure() const {
  for (const auto& g : gates) {
    if (g.binding && !g.passed) return &g;
  }
  return nullptr;
}

ValidationOutcome run_validation(const ValidationConfig& config, Execution execution) {
  switch (config.mode) {
    case ValidationMode::normality: return normality(config, execution);
    case ValidationMode::limit_law: return limit_law(config, execution);
    case ValidationMode::covariance: return covariance(config, execution);
    case ValidationMode::malmquist: return malmquist(config, execution);
    case ValidationMode::rho: return rho(config);
  }
  throw ConfigError("unknown validation mode");
}

}  // namespace ghp
