#include "ghp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ghp/error.hpp"
#include "ghp/format.hpp"
#include "ghp/summation.hpp"

namespace ghp {

OrderedSample::OrderedSample(std::int64_t n, std::vector<double> y_top)
    : n_(n), y_top_(std::move(y_top)) {
  if (y_top_.size() < 2) throw DataError("an ordered sample needs at least k + 1 = 2 values");
  if (n_ < static_cast<std::int64_t>(y_top_.size())) {
    throw DataError("sample size n is smaller than k + 1");
  }
  for (std::size_t i = 0; i < y_top_.size(); ++i) {
    if (!std::isfinite(y_top_[i])) throw DataError("ordered sample holds a non-finite value");
    if (i > 0 && y_top_[i] > y_top_[i - 1]) {
      throw DataError("ordered sample is not nonincreasing at position " + std::to_string(i + 1));
    }
  }
}

OrderedSample order_statistics(std::span<const double> data, std::int64_t k, bool strict_ties) {
  if (k < 1) throw DataError("k must be at least 1");
  std::vector<double> usable;
  usable.reserve(data.size());
  for (double x : data) {
    if (std::isfinite(x)) usable.push_back(x);
  }
  const auto need = static_cast<std::size_t>(k + 1);
  if (usable.size() < need) {
    throw DataError("insufficient data: " + std::to_string(usable.size()) +
                    " usable values, need k + 1 = " + std::to_string(need));
  }
  std::nth_element(usable.begin(), usable.begin() + static_cast<std::ptrdiff_t>(need - 1),
                   usable.end(), std::greater<>());
  std::sort(usable.begin(), usable.begin() + static_cast<std::ptrdiff_t>(need), std::greater<>());
  const auto nonpositive =
      std::count_if(usable.begin(), usable.begin() + static_cast<std::ptrdiff_t>(need),
                    [](double x) { return !(x > 0.0); });
  if (nonpositive > 0) {
    throw DomainError(std::to_string(nonpositive) + " of the top k + 1 = " + std::to_string(need) +
                    " values are not positive; logs are undefined");
  }
  std::vector<double> y_top(need);
  for (std::size_t i = 0; i < need; ++i) {
    y_top[i] = std::log(usable[i]);
    if (strict_ties && i > 0 && usable[i] == usable[i - 1]) {
      throw DataError("tied values among the top k + 1 (strict mode)");
    }
  }
  return OrderedSample(static_cast<std::int64_t>(usable.size()), std::move(y_top));
}

double t_n(const WeightFunction& f, const OrderedSample& os) {
  CompensatedSum total;
  for (std::int64_t j = 1; j <= os.k(); ++j) total += f(j) * os.spacing(j);
  return total.value();
}

double hill(const OrderedSample& os) {
  return t_n(WeightFunction::power(1.0), os) / static_cast<double>(os.k());
}

double studentize(double t_value, const NormalizationSet& norms, Domain domain, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("studentization scale must be positive, got " + format_number(scale));
  }
  if (domain == Domain::gumbel) {
    return (t_value - norms.a_n * scale) / (norms.sigma_n * scale);
  }
  return (norms.a_n / norms.sigma_n) * (t_value / norms.a_n - scale);
}

double studentize(double t_value, const WeightFunction& f, std::int64_t k, Domain domain,
                  double scale) {
  return studentize(t_value, normalization(f, k), domain, scale);
}

double plugin_scale(const OrderedSample& os, Domain /*domain*/) {
  const double value = hill(os);
  if (!(value > 0.0)) {
    throw DataError("degenerate data: Hill value is 0 (all top values tied)");
  }
  return value;
}

std::vector<double> weibull_transform(std::span<const double> data, double x0) {
  std::vector<double> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double gap = x0 - data[i];
    if (gap < 0.0) {
      throw DataError("endpoint x0 = " + format_number(x0) + " is below observation " +
                      std::to_string(i + 1) + " = " + format_number(data[i]));
    }
    if (gap == 0.0) {
      throw DataError("observation " + std::to_string(i + 1) +
                      " equals the endpoint x0; its transform is undefined");
    }
    out.push_back(1.0 / gap);
  }
  return out;
}

GhpResult evaluate(const WeightFunction& f, const OrderedSample& os, std::optional<Domain> domain,
                   std::optional<double> scale) {
  GhpResult out;
  out.t_n = t_n(f, os);
  out.norms = normalization(f, os.k());
  if (domain && scale) {
    const double v = studentize(out.t_n, out.norms, *domain, *scale);
    if (*domain == Domain::gumbel) out.v_gumbel = v;
    else out.v_frechet = v;
    out.scale_used = scale;
  }
  return out;
}

GhpProcess::GhpProcess(std::vector<WeightFunction> weights, std::int64_t k)
    : weights_(std::move(weights)), k_(k) {
  if (k < 1) throw DomainError("k must be at least 1");
  const std::size_t s = weights_.size();
  norms_.reserve(s);
  for (const auto& f : weights_) norms_.push_back(normalization(f, k));
  table_.resize(static_cast<std::size_t>(k) * s);
  for (std::int64_t j = 1; j <= k; ++j) {
    for (std::size_t i = 0; i < s; ++i) {
      table_[static_cast<std::size_t>(j - 1) * s + i] = weights_[i](j);
    }
  }
}

void GhpProcess::statistics(std::span<const double> y_top, std::span<double> out) const {
  const std::size_t s = weights_.size();
  if (static_cast<std::int64_t>(y_top.size()) != k_ + 1) {
    throw InputError("ordered sample has k = " + std::to_string(y_top.size() - 1) +
                     ", process expects " + std::to_string(k_));
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 1; j <= static_cast<std::size_t>(k_); ++j) {
    const double gap = y_top[j - 1] - y_top[j];
    const double* row = &table_[(j - 1) * s];
    for (std::size_t i = 0; i < s; ++i) out[i] += row[i] * gap;
  }
}

void GhpProcess::statistics(const OrderedSample& os, std::span<double> out) const {
  statistics(os.y_top(), out);
}

std::vector<double> GhpProcess::studentized(const OrderedSample& os, Domain domain,
                                            double scale) const {
  std::vector<double> out(size());
  statistics(os, out);
  for (std::size_t i = 0; i < size(); ++i) out[i] = studentize(out[i], norms_[i], domain, scale);
  return out;
}

std::vector<double> process_eval(std::span<const WeightFunction> weights,
                                 const OrderedSample& os, Domain domain, double scale) {
  if (weights.empty()) return {};
  GhpProcess process(std::vector<WeightFunction>(weights.begin(), weights.end()), os.k());
  return process.studentized(os, domain, scale);
}

}  // namespace ghp
