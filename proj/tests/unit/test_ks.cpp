#include <gtest/gtest.h>

#include <cmath>

#include "ghp/error.hpp"
#include "ghp/ks.hpp"
#include "ghp/rng.hpp"

TEST(Ks, TwoSampleWithItself) {
  const std::vector<double> a{0.3, -1.0, 2.0, 0.3, 5.0};
  EXPECT_EQ(ghp::ks_two_sample(a, a), 0.0);
}

TEST(Ks, TwoSampleDisjoint) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5};
  EXPECT_DOUBLE_EQ(ghp::ks_two_sample(a, b), 1.0);
  const std::vector<double> c{1, 3};
  const std::vector<double> d{2, 4};
  EXPECT_DOUBLE_EQ(ghp::ks_two_sample(c, d), 0.5);
}

TEST(Ks, PointMassAtMedian) {
  const std::vector<double> zeros(100, 0.0);
  EXPECT_DOUBLE_EQ(ghp::ks_one_sample(zeros, ghp::standard_normal_cdf), 0.5);
}

TEST(Ks, NormalDraws) {
  ghp::Rng rng({41, 0});
  std::vector<double> z(10'000);
  for (auto& x : z) x = rng.normal();
  EXPECT_LT(ghp::ks_one_sample(z, ghp::standard_normal_cdf), 0.0204);
  std::vector<double> e(10'000);
  for (auto& x : e) x = rng.exponential();
  EXPECT_LT(ghp::ks_one_sample(e, ghp::exp1_cdf), 0.0204);
  EXPECT_GT(ghp::ks_one_sample(e, ghp::standard_normal_cdf), 0.4);
}

TEST(Ks, Cdfs) {
  EXPECT_DOUBLE_EQ(ghp::standard_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(ghp::standard_normal_cdf(1.96), 0.9750021048517795, 1e-15);
  EXPECT_EQ(ghp::exp1_cdf(-1.0), 0.0);
  EXPECT_NEAR(ghp::exp1_cdf(1.0), 1.0 - std::exp(-1.0), 1e-16);
}

TEST(Ks, Errors) {
  const std::vector<double> empty;
  const std::vector<double> one{1.0};
  EXPECT_THROW(ghp::ks_one_sample(empty, ghp::exp1_cdf), ghp::InputError);
  EXPECT_THROW(ghp::ks_two_sample(empty, one), ghp::InputError);
  EXPECT_THROW(ghp::moments(empty), ghp::InputError);
}

TEST(Ks, Moments) {
  const std::vector<double> x{1, 2, 3, 4, 10};
  const auto m = ghp::moments(x);
  EXPECT_DOUBLE_EQ(m.mean, 4.0);
  EXPECT_DOUBLE_EQ(m.variance, (9 + 4 + 1 + 0 + 36) / 4.0);
  const double m2 = 50.0 / 5.0;
  const double m3 = (-27 - 8 - 1 + 0 + 216) / 5.0;
  EXPECT_NEAR(m.skewness, m3 / std::pow(m2, 1.5), 1e-14);
}

TEST(Ks, Pearson) {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{2, 4, 6, 8};
  const std::vector<double> c{4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(ghp::pearson(a, a), 1.0);
  EXPECT_NEAR(ghp::pearson(a, b), 1.0, 1e-15);
  EXPECT_NEAR(ghp::pearson(a, c), -1.0, 1e-15);
  const std::vector<double> flat{1, 1, 1, 1};
  EXPECT_THROW(ghp::pearson(a, flat), ghp::DataError);
  EXPECT_THROW(ghp::pearson(a, std::vector<double>{1, 2}), ghp::InputError);
}
