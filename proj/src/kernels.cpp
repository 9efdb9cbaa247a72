#include "ghp/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "ghp/error.hpp"
#include "ghp/summation.hpp"

namespace ghp {

namespace {

constexpr double kSafeLogRange = 200.0;
constexpr std::int64_t kBlock = 1 << 15;

struct ScaledRatio {
  const WeightFunction* f;
  double shift;
  bool log_space;

  double operator()(std::int64_t j) const {
    if (!log_space) return (*f)(j) / static_cast<double>(j);
    return std::exp(f->log_value(j) - std::log(static_cast<double>(j)) - shift);
  }
};

struct Accumulator {
  explicit Accumulator(std::size_t s) : sum(s), gram(s * s), max(s, 0.0) {}
  std::vector<CompensatedSum> sum;
  std::vector<CompensatedSum> gram;
  std::vector<double> max;
};

void accumulate(const std::vector<ScaledRatio>& ratios, std::int64_t first,
                std::int64_t last, Accumulator& acc, std::vector<double>& scratch) {
  const std::size_t s = ratios.size();
  for (std::int64_t j = first; j <= last; ++j) {
    for (std::size_t a = 0; a < s; ++a) scratch[a] = ratios[a](j);
    for (std::size_t a = 0; a < s; ++a) {
      acc.sum[a] += scratch[a];
      acc.max[a] = std::max(acc.max[a], scratch[a]);
      for (std::size_t b = a; b < s; ++b) acc.gram[a * s + b] += scratch[a] * scratch[b];
    }
  }
}

}  // namespace

RatioSums ratio_sums(std::span<const WeightFunction> weights, std::int64_t k,
                     Execution execution) {
  if (k < 1) throw DomainError("k must be at least 1");
  const std::size_t s = weights.size();
  std::vector<ScaledRatio> ratios;
  ratios.reserve(s);
  RatioSums out;
  out.count = s;
  for (const auto& f : weights) {
    const double top = f.max_log_ratio(k);
    const bool log_space = std::fabs(top) > kSafeLogRange;
    ratios.push_back({&f, log_space ? top : 0.0, log_space});
    out.shift.push_back(log_space ? top : 0.0);
  }

  Accumulator total(s);
  if (execution == Execution::serial) {
    std::vector<double> scratch(s);
    accumulate(ratios, 1, k, total, scratch);
  } else {
    const std::int64_t blocks = (k + kBlock - 1) / kBlock;
    std::vector<Accumulator> partial(static_cast<std::size_t>(blocks), Accumulator(s));
#pragma omp parallel
    {
      std::vector<double> scratch(s);
#pragma omp for schedule(static)
      for (std::int64_t b = 0; b < blocks; ++b) {
        const std::int64_t first = b * kBlock + 1;
        const std::int64_t last = std::min(k, first + kBlock - 1);
        accumulate(ratios, first, last, partial[static_cast<std::size_t>(b)], scratch);
      }
    }
    for (const auto& block : partial) {
      for (std::size_t a = 0; a < s; ++a) {
        total.sum[a] += block.sum[a].value();
        total.max[a] = std::max(total.max[a], block.max[a]);
      }
      for (std::size_t i = 0; i < s * s; ++i) total.gram[i] += block.gram[i].value();
    }
  }

  out.sum.resize(s);
  out.max = total.max;
  out.gram.assign(s * s, 0.0);
  for (std::size_t a = 0; a < s; ++a) {
    out.sum[a] = total.sum[a].value();
    for (std::size_t b = a; b < s; ++b) {
      out.gram[a * s + b] = total.gram[a * s + b].value();
      out.gram[b * s + a] = out.gram[a * s + b];
    }
  }
  return out;
}

PlainSum plain_sum(const WeightFunction& f, std::int64_t k, Execution execution) {
  if (k < 1) throw DomainError("k must be at least 1");
  // max log f(j) <= max log(f(j)/j) + log k
  const double top = f.max_log_ratio(k) + std::log(static_cast<double>(k));
  const bool log_space = std::fabs(top) > kSafeLogRange;
  const double shift = log_space ? top : 0.0;
  auto term = [&](std::int64_t j) {
    return log_space ? std::exp(f.log_value(j) - shift) : f(j);
  };

  CompensatedSum total;
  if (execution == Execution::serial) {
    for (std::int64_t j = 1; j <= k; ++j) total += term(j);
  } else {
    const std::int64_t blocks = (k + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::int64_t first = b * kBlock + 1;
      const std::int64_t last = std::min(k, first + kBlock - 1);
      CompensatedSum block;
      for (std::int64_t j = first; j <= last; ++j) block += term(j);
      partial[static_cast<std::size_t>(b)] = block.value();
    }
    for (double v : partial) total += v;
  }
  return {shift, total.value()};
}

}  // namespace ghp
