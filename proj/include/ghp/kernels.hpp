#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghp/weight.hpp"

namespace ghp {

/// Selects between the OpenMP kernel and the plain serial loop it is tested
/// against. Both are deterministic; the parallel kernel partitions [1, k]
/// into fixed blocks and combines block results in index order, so its
/// output does not depend on the thread count.
enum class Execution { serial, parallel };

/// Sums over j = 1..k of the scaled ratios r_i(j) = exp(-shift[i]) f_i(j)/j
/// for a family of weights: first moments, the Gram matrix of products and
/// the maxima. shift[i] is nonzero only when f_i(j)/j would leave the safe
/// exponent range, in which case ratios are formed in log space.
struct RatioSums {
  std::size_t count = 0;
  std::vector<double> shift;
  std::vector<double> sum;
  std::vector<double> max;
  std::vector<double> gram;  // row-major count x count

  double gram_at(std::size_t a, std::size_t b) const { return gram[a * count + b]; }
};

RatioSums ratio_sums(std::span<const WeightFunction> weights, std::int64_t k,
                     Execution execution = Execution::parallel);

/// sum_{j=1}^{k} f(j), scaled by exp(-shift) with shift chosen as above
/// (the plain sum, not the ratio; it enters the bias conditions).
struct PlainSum {
  double shift = 0.0;
  double sum = 0.0;
};

PlainSum plain_sum(const WeightFunction& f, std::int64_t k,
                   Execution execution = Execution::parallel);

}  // namespace ghp
