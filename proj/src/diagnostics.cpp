#include "ghp/diagnostics.hpp"

#include <cmath>
#include <string>

#include "ghp/core.hpp"
#include "ghp/error.hpp"
#include "ghp/ks.hpp"
#include "ghp/limit_laws.hpp"
#include "ghp/rng.hpp"
#include "ghp/samplers.hpp"

namespace ghp {

namespace {

// Stream-id layout: replicate r uses r; limit-law reference draws for
// weight i use kLimitStreamBase + i * kLimitStreamStride + draw index.
constexpr std::uint64_t kLimitStreamBase = std::uint64_t{1} << 48;
constexpr std::uint64_t kLimitStreamStride = std::uint64_t{1} << 32;

Domain domain_for(const TailModel& model) {
  return std::holds_alternative<GumbelDeHaan>(model.variant()) ? Domain::gumbel : Domain::frechet;
}

void validate(const McConfig& config) {
  if (config.weights.empty()) throw ConfigError("at least one weight is required");
  if (config.k < 1 || config.k + 1 > config.n) throw ConfigError("need 1 <= k and k + 1 <= n");
  if (config.reps < 2) throw ConfigError("replication count must be at least 2");
}

}  // namespace

std::string to_string(ScaleMode mode) { return mode == ScaleMode::oracle ? "oracle" : "plugin"; }

std::string to_string(Domain domain) { return domain == Domain::gumbel ? "gumbel" : "frechet"; }

std::vector<double> McDraws::column(std::size_t i) const {
  std::vector<double> out(static_cast<std::size_t>(reps));
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = values[r * weights + i];
  return out;
}

McDraws mc_replicates(const McConfig& config, Execution execution) {
  validate(config);
  const Domain domain = domain_for(config.model);
  std::optional<double> oracle;
  if (config.scale_mode == ScaleMode::oracle) {
    oracle = config.model.oracle_scale(static_cast<double>(config.k) /
                                       static_cast<double>(config.n));
    if (!oracle) {
      throw ConfigError("oracle scale is unavailable for model " + config.model.name());
    }
  }
  // the Weibull model enters through z = 1/(y0 - X), i.e. Y -> -log(y0 - Y)
  const auto* weibull = std::get_if<WeibullKaramata>(&config.model.variant());

  const GhpProcess process(config.weights, config.k);
  const std::size_t s = process.size();
  McDraws out;
  out.weights = s;
  out.reps = config.reps;
  out.domain = domain;
  out.values.resize(static_cast<std::size_t>(config.reps) * s);

  const bool parallel = execution == Execution::parallel;
  // first failure inside the parallel region, rethrown after it
  std::string failure;
#pragma omp parallel if (parallel)
  {
    std::vector<double> stats(s);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < config.reps; ++r) {
      try {
        Rng rng({config.seed, static_cast<std::uint64_t>(r)});
        std::vector<double> y_top;
        if (weibull) {
          y_top = sample_top_uniform_log_order_stats(config.n, config.k, rng);
          for (auto& y : y_top) y = -weibull_log_gap(*weibull, y);
        } else {
          y_top = sample_top_log_order_stats(config.model, config.n, config.k, rng);
        }
        process.statistics(y_top, stats);
        double scale = 0.0;
        if (oracle) {
          scale = *oracle;
        } else {
          double hill_sum = 0.0;
          for (std::int64_t j = 1; j <= config.k; ++j) {
            hill_sum += static_cast<double>(j) * (y_top[static_cast<std::size_t>(j - 1)] -
                                                  y_top[static_cast<std::size_t>(j)]);
          }
          scale = hill_sum / static_cast<double>(config.k);
          if (!(scale > 0.0)) throw DataError("degenerate replicate: Hill plug-in is 0");
        }
        double* row = &out.values[static_cast<std::size_t>(r) * s];
        for (std::size_t i = 0; i < s; ++i) {
          const double v = studentize(stats[i], process.norms(i), domain, scale);
          row[i] = domain == Domain::frechet ? v / scale : v;
        }
      } catch (const std::exception& e) {
#pragma omp critical(ghp_mc_failure)
        if (failure.empty()) failure = e.what();
      }
    }
  }
  if (!failure.empty()) throw NumericError("Monte Carlo replicate failed: " + failure);
  return out;
}

MonteCarloReport mc_studentized(const McConfig& config, Execution execution) {
  const auto draws = mc_replicates(config, execution);
  MonteCarloReport report;
  report.model = config.model.spec();
  for (const auto& f : config.weights) report.f_list.push_back(f.label());
  report.n = config.n;
  report.k = config.k;
  report.R = config.reps;
  report.seed = config.seed;
  report.scale_mode = config.scale_mode;
  report.domain = to_string(draws.domain);

  const bool parallel = execution == Execution::parallel;
  for (std::size_t i = 0; i < draws.weights; ++i) {
    const auto column = draws.column(i);
    const auto m = moments(column);
    WeightSummary summary;
    summary.f = config.weights[i].label();
    summary.mean = m.mean;
    summary.variance = m.variance;
    summary.skewness = m.skewness;
    summary.ks_vs_normal = ks_one_sample(column, standard_normal_cdf);
    report.ks_vs_normal = std::max(report.ks_vs_normal, summary.ks_vs_normal);

    const auto tail = config.weights[i].tail_exponent();
    if (tail && *tail < 0.5) {
      const auto spec = make_limit_law(config.weights[i], config.limit_tol);
      const auto reference = sample_limit_L_streams(
          spec, config.seed, kLimitStreamBase + i * kLimitStreamStride, config.reps, parallel);
      summary.ks_vs_limit_law = ks_two_sample(column, reference);
      const auto lm = moments(reference);
      summary.limit_mean = lm.mean;
      summary.limit_variance = lm.variance;
      summary.limit_skewness = lm.skewness;
      report.ks_vs_limit_law = std::max(report.ks_vs_limit_law.value_or(0.0),
                                        *summary.ks_vs_limit_law);
    }
    report.summaries.push_back(summary);
  }

  if (draws.weights >= 2 && draws.reps >= 30) {
    const std::size_t s = draws.weights;
    std::vector<double> corr(s * s, 1.0);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = a + 1; b < s; ++b) {
        corr[a * s + b] = corr[b * s + a] = empirical_cov(draws, a, b);
      }
    }
    report.empirical_corr = std::move(corr);
  }
  return report;
}

double empirical_cov(const McDraws& draws, std::size_t a, std::size_t b) {
  if (draws.reps < 30) throw ConfigError("empirical covariance needs at least 30 replicates");
  if (a >= draws.weights || b >= draws.weights) throw InputError("weight index out of range");
  if (a == b) {
    // Pearson of a column with itself; still rejects a constant column
    const auto column = draws.column(a);
    return pearson(column, column);
  }
  return pearson(draws.column(a), draws.column(b));
}

double empirical_cov(const McConfig& config, std::size_t a, std::size_t b) {
  return empirical_cov(mc_replicates(config), a, b);
}

std::vector<RhoPoint> rho_convergence_trace(const WeightFunction& f1, const WeightFunction& f2,
                                            std::span<const std::int64_t> k_grid) {
  if (k_grid.empty()) throw InputError("k grid is empty");
  const auto t1 = f1.power_exponent();
  const auto t2 = f2.power_exponent();
  double limit = 0.0;
  if (f1.label() != f2.label()) {
    if (!t1 || !t2) {
      throw UnsupportedError("closed-form semimetric limit needs power weights");
    }
    limit = 2.0 * (1.0 - power_class_covariance(*t1, *t2));
  }
  std::vector<RhoPoint> out;
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (i > 0 && k_grid[i] <= k_grid[i - 1]) throw InputError("k grid must be ascending");
    out.push_back({k_grid[i], semimetric_sq(f1, f2, k_grid[i]), limit});
  }
  return out;
}

std::vector<double> pooled_malmquist(std::int64_t n, std::int64_t k, std::int64_t reps,
                                     std::uint64_t seed, Execution execution) {
  if (reps < 1) throw ConfigError("replication count must be at least 1");
  if (k < 1 || k + 1 > n) throw ConfigError("need 1 <= k and k + 1 <= n");
  std::vector<double> pooled(static_cast<std::size_t>(reps * k));
#pragma omp parallel for schedule(static) if (execution == Execution::parallel)
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto u = sample_top_uniform_order_stats(n, k, {seed, static_cast<std::uint64_t>(r)});
    const auto s = malmquist_spacings(u, k);
    std::copy(s.begin(), s.end(), pooled.begin() + r * k);
  }
  return pooled;
}

}  // namespace ghp
