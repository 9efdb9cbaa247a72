#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ghp/error.hpp"
#include "ghp/rng.hpp"
#include "ghp/samplers.hpp"

using ghp::TailModel;

TEST(Rng, Reproducible) {
  ghp::Rng a({7, 3});
  ghp::Rng b({7, 3});
  ghp::Rng c({7, 4});
  ghp::Rng d({8, 3});
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs_c |= x != c();
    differs_d |= x != d();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
}

TEST(Rng, UniformOpenInterval) {
  ghp::Rng rng({1, 0});
  double sum = 0.0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, DistributionMoments) {
  ghp::Rng rng({2, 0});
  const int n = 200'000;
  double e = 0.0, z = 0.0, z2 = 0.0, g = 0.0;
  for (int i = 0; i < n; ++i) {
    e += rng.exponential();
    const double x = rng.normal();
    z += x;
    z2 += x * x;
    g += rng.gamma(3.5);
  }
  EXPECT_NEAR(e / n, 1.0, 3.0 / std::sqrt(n));
  EXPECT_NEAR(z / n, 0.0, 3.0 / std::sqrt(n));
  EXPECT_NEAR(z2 / n, 1.0, 3.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(g / n, 3.5, 3.0 * std::sqrt(3.5 / n));
}

TEST(Samplers, ParetoLogMean) {
  const auto y = ghp::sample_iid(TailModel::pareto(0.5), 1'000'000, {11, 0});
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  EXPECT_NEAR(mean, 0.5, 0.002);
}

TEST(Samplers, SingleDrawIsQuantileOfSeededUniform) {
  const TailModel m(ghp::GumbelDeHaan{0.5, 1.0, {0.1, 1.0}, {0.2, 0.5}});
  const auto y = ghp::sample_iid(m, 1, {5, 9});
  ghp::Rng rng({5, 9});
  const double u = rng.uniform();
  EXPECT_NEAR(y[0], ghp::quantile_logF(m, u), 1e-13);
  EXPECT_EQ(ghp::sample_iid(m, 1, {5, 9}), y);
}

TEST(Samplers, MinimumOrderStatisticMean) {
  const std::int64_t n = 1000;
  const int reps = 100'000;
  ghp::Rng rng({3, 0});
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    sum += n * std::exp(ghp::sample_top_uniform_log_order_stats(n, 1, rng)[0]);
  }
  // n U_{1,n} has mean n/(n+1) and variance close to 1
  EXPECT_NEAR(sum / reps, n / (n + 1.0), 3.0 / std::sqrt(static_cast<double>(reps)));
}

TEST(Samplers, IntermediateOrderStatistic) {
  const std::int64_t n = 1'000'000;
  const std::int64_t k = 1000;
  ghp::Rng rng({4, 0});
  const int reps = 400;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto lu = ghp::sample_top_uniform_log_order_stats(n, k, rng);
    sum += static_cast<double>(n) / k * std::exp(lu[k]);
  }
  // sd of (n/k) U_{k+1,n} is about 1/sqrt(k)
  EXPECT_NEAR(sum / reps, 1.0, 3.0 / std::sqrt(static_cast<double>(k) * reps));
}

TEST(Samplers, OrderStatisticsAscending) {
  const auto u = ghp::sample_top_uniform_order_stats(100, 99, {6, 0});
  ASSERT_EQ(u.size(), 100u);
  for (std::size_t i = 1; i < u.size(); ++i) EXPECT_GT(u[i], u[i - 1]);
  EXPECT_LT(u.back(), 1.0);
  EXPECT_THROW(ghp::sample_top_uniform_order_stats(10, 10, {6, 0}), ghp::DomainError);
  EXPECT_THROW(ghp::sample_top_uniform_order_stats(10, 0, {6, 0}), ghp::DomainError);
}

TEST(Samplers, MalmquistFormula) {
  const std::vector<double> u{0.1, 0.2};
  EXPECT_NEAR(ghp::malmquist_spacings(u, 1)[0], std::log(2.0), 1e-15);
  EXPECT_THROW(ghp::malmquist_spacings(std::vector<double>{0.2, 0.1}, 1), ghp::InputError);
  EXPECT_THROW(ghp::malmquist_spacings(std::vector<double>{0.0, 0.1}, 1), ghp::InputError);
  EXPECT_THROW(ghp::malmquist_spacings(std::vector<double>{0.1}, 1), ghp::InputError);
}

TEST(Samplers, MalmquistMeans) {
  const std::int64_t k = 5;
  const int reps = 10'000;
  std::vector<double> sums(k, 0.0);
  for (int r = 0; r < reps; ++r) {
    const auto u = ghp::sample_top_uniform_order_stats(100, k, {8, static_cast<std::uint64_t>(r)});
    const auto s = ghp::malmquist_spacings(u, k);
    for (std::int64_t j = 0; j < k; ++j) sums[j] += s[j];
  }
  for (std::int64_t j = 0; j < k; ++j) EXPECT_NEAR(sums[j] / reps, 1.0, 3.0 / std::sqrt(reps));
}

TEST(Samplers, TopLogOrderStatsDescending) {
  ghp::Rng rng({9, 0});
  const TailModel m(ghp::WeibullKaramata{0.5, 0.0, 1.0, {}, {}});
  const auto y = ghp::sample_top_log_order_stats(m, 10'000, 50, rng);
  ASSERT_EQ(y.size(), 51u);
  for (std::size_t i = 1; i < y.size(); ++i) EXPECT_LT(y[i], y[i - 1]);
  EXPECT_LT(y[0], 0.0);
}
