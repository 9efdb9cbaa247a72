#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghp/core.hpp"
#include "ghp/weight.hpp"

namespace ghp {

/// Which extremal domain the studentization targets.
enum class Domain { gumbel, frechet };

/// Logs of the k+1 largest observations of a sample of size n, descending:
/// y_top[0] = Y_{n,n} >= y_top[1] >= ... >= y_top[k] = Y_{n-k,n}.
class OrderedSample {
 public:
  /// Validates length k+1, finiteness and monotonicity.
  OrderedSample(std::int64_t n, std::vector<double> y_top);

  std::int64_t n() const { return n_; }
  std::int64_t k() const { return static_cast<std::int64_t>(y_top_.size()) - 1; }
  std::span<const double> y_top() const { return y_top_; }

  /// Y_{n-j+1,n} - Y_{n-j,n}; j = 1 pairs the two largest values.
  double spacing(std::int64_t j) const {
    return y_top_[static_cast<std::size_t>(j - 1)] - y_top_[static_cast<std::size_t>(j)];
  }

 private:
  std::int64_t n_;
  std::vector<double> y_top_;
};

/// Selects the k+1 largest raw values by partial sort and takes logs. Ties
/// stay in place and yield zero spacings unless strict_ties rejects them.
OrderedSample order_statistics(std::span<const double> data, std::int64_t k,
                               bool strict_ties = false);

/// T_n(f) = sum_{j=1}^{k} f(j) (Y_{n-j+1,n} - Y_{n-j,n}).
double t_n(const WeightFunction& f, const OrderedSample& os);

/// T_n(j -> j) / k.
double hill(const OrderedSample& os);

/// gumbel:  (T_n - a_n scale) / (sigma_n scale)
/// frechet: (a_n / sigma_n) (T_n / a_n - scale)
double studentize(double t_value, const NormalizationSet& norms, Domain domain, double scale);
double studentize(double t_value, const WeightFunction& f, std::int64_t k, Domain domain,
                  double scale);

/// Hill plug-in for the scale in either domain (for the Gumbel branch,
/// a_n(j -> j) = k makes the Hill value target s(k/n)).
double plugin_scale(const OrderedSample& os, Domain domain);

/// z_i = 1 / (x0 - x_i): maps an upper-bounded sample with endpoint x0
/// into a heavy-tailed one with the same index.
std::vector<double> weibull_transform(std::span<const double> data, double x0);

struct GhpResult {
  double t_n = 0.0;
  NormalizationSet norms;
  std::optional<double> v_gumbel;
  std::optional<double> v_frechet;
  std::optional<double> scale_used;
};

/// T_n(f) with its constants; fills the studentized value of the chosen
/// domain when a scale is supplied.
GhpResult evaluate(const WeightFunction& f, const OrderedSample& os,
                   std::optional<Domain> domain = std::nullopt,
                   std::optional<double> scale = std::nullopt);

/// The process {T_n(f) : f in a finite family} at a fixed k. Weights and
/// normalizations are tabulated once; evaluation makes one pass over the
/// spacings accumulating every weight.
class GhpProcess {
 public:
  GhpProcess(std::vector<WeightFunction> weights, std::int64_t k);

  std::size_t size() const { return weights_.size(); }
  std::int64_t k() const { return k_; }
  const std::vector<WeightFunction>& weights() const { return weights_; }
  const NormalizationSet& norms(std::size_t i) const { return norms_[i]; }

  /// T_n for every weight, written to out (size() entries).
  void statistics(const OrderedSample& os, std::span<double> out) const;
  void statistics(std::span<const double> y_top, std::span<double> out) const;

  /// Studentized values for every weight.
  std::vector<double> studentized(const OrderedSample& os, Domain domain, double scale) const;

 private:
  std::vector<WeightFunction> weights_;
  std::int64_t k_;
  std::vector<NormalizationSet> norms_;
  std::vector<double> table_;  // k x size(), row j-1 holds f_i(j)
};

/// Vectorized t_n + studentize over a weight family.
std::vector<double> process_eval(std::span<const WeightFunction> weights,
                                 const OrderedSample& os, Domain domain, double scale);

}  // namespace ghp
