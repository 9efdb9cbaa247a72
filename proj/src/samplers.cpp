#include "ghp/samplers.hpp"

#include <cmath>
#include <string>

#include "ghp/error.hpp"

namespace ghp {

std::vector<double> sample_iid(const TailModel& model, std::int64_t n, RngStream stream) {
  if (n < 1) throw DomainError("sample size must be at least 1");
  Rng rng(stream);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& y : out) y = quantile_from_log_u(model, std::log(rng.uniform()));
  return out;
}

std::vector<double> sample_top_uniform_log_order_stats(std::int64_t n, std::int64_t k, Rng& rng) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (k + 1 > n) {
    throw DomainError("need k + 1 <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  std::vector<double> partial(static_cast<std::size_t>(k + 1));
  double running = 0.0;
  for (auto& g : partial) {
    running += rng.exponential();
    g = running;
  }
  const double log_total = std::log(running + rng.gamma(static_cast<double>(n - k)));
  for (auto& g : partial) g = std::log(g) - log_total;
  return partial;
}

std::vector<double> sample_top_uniform_order_stats(std::int64_t n, std::int64_t k,
                                                   RngStream stream) {
  Rng rng(stream);
  auto out = sample_top_uniform_log_order_stats(n, k, rng);
  for (auto& v : out) v = std::exp(v);
  return out;
}

std::vector<double> malmquist_spacings(std::span<const double> uniform_order_stats,
                                       std::int64_t k) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (static_cast<std::int64_t>(uniform_order_stats.size()) < k + 1) {
    throw InputError("need at least k + 1 = " + std::to_string(k + 1) + " order statistics");
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(k + 1); ++i) {
    const double u = uniform_order_stats[i];
    if (!(u > 0.0 && u < 1.0)) throw InputError("order statistics must lie in (0, 1)");
    if (i > 0 && !(u > uniform_order_stats[i - 1])) {
      throw InputError("order statistics must be strictly ascending (position " +
                       std::to_string(i + 1) + ")");
    }
  }
  std::vector<double> out(static_cast<std::size_t>(k));
  for (std::int64_t j = 1; j <= k; ++j) {
    const auto i = static_cast<std::size_t>(j);
    out[i - 1] = static_cast<double>(j) *
                 (std::log(uniform_order_stats[i]) - std::log(uniform_order_stats[i - 1]));
  }
  return out;
}

std::vector<double> sample_top_log_order_stats(const TailModel& model, std::int64_t n,
                                               std::int64_t k, Rng& rng) {
  auto log_u = sample_top_uniform_log_order_stats(n, k, rng);
  for (auto& v : log_u) v = quantile_from_log_u(model, v);
  return log_u;
}

}  // namespace ghp
