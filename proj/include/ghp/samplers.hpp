#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghp/rng.hpp"
#include "ghp/tail_model.hpp"

namespace ghp {

/// n i.i.d. values Y_i = G^{-1}(1 - U_i) with U_i uniform on (0, 1).
std::vector<double> sample_iid(const TailModel& model, std::int64_t n, RngStream stream);

/// log U_{1,n} < ... < log U_{k+1,n}, the k+1 smallest of n uniforms,
/// generated from exponential spacings: U_{j,n} = Gamma_j / Gamma_{n+1}
/// where Gamma_j are partial sums of standard exponentials and the last
/// n - k summands enter through a single Gamma(n - k) draw. Costs O(k).
std::vector<double> sample_top_uniform_log_order_stats(std::int64_t n, std::int64_t k, Rng& rng);

/// Same order statistics on the natural scale (ascending).
std::vector<double> sample_top_uniform_order_stats(std::int64_t n, std::int64_t k,
                                                   RngStream stream);

/// s_j = j log(U_{j+1,n} / U_{j,n}) for j = 1..k; i.i.d. standard
/// exponential when the input is the bottom of a uniform sample.
std::vector<double> malmquist_spacings(std::span<const double> uniform_order_stats,
                                       std::int64_t k);

/// Top k+1 values of Y, descending, for a sample of size n from the model:
/// the quantile map applied to the k+1 smallest uniforms.
std::vector<double> sample_top_log_order_stats(const TailModel& model, std::int64_t n,
                                               std::int64_t k, Rng& rng);

}  // namespace ghp
