#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ghp/error.hpp"
#include "ghp/estimators.hpp"
#include "ghp/ks.hpp"
#include "ghp/samplers.hpp"

using ghp::Domain;
using ghp::WeightFunction;

namespace {

ghp::OrderedSample unit_spacings() { return ghp::OrderedSample(10, {3.0, 2.0, 1.0, 0.0}); }

ghp::OrderedSample pareto_sample(double gamma, std::int64_t n, std::int64_t k,
                                 std::uint64_t stream) {
  ghp::Rng rng({77, stream});
  return ghp::OrderedSample(
      n, ghp::sample_top_log_order_stats(ghp::TailModel::pareto(gamma), n, k, rng));
}

}  // namespace

TEST(Estimators, OrderStatisticsExample) {
  const std::vector<double> data{1, 2, 3, 4};
  const auto os = ghp::order_statistics(data, 2);
  ASSERT_EQ(os.k(), 2);
  EXPECT_EQ(os.n(), 4);
  EXPECT_DOUBLE_EQ(os.y_top()[0], std::log(4.0));
  EXPECT_DOUBLE_EQ(os.y_top()[1], std::log(3.0));
  EXPECT_DOUBLE_EQ(os.y_top()[2], std::log(2.0));
  EXPECT_NEAR(ghp::t_n(WeightFunction::power(1), os),
              std::log(4.0 / 3.0) + 2.0 * std::log(1.5), 1e-15);
  EXPECT_NEAR(ghp::t_n(WeightFunction::power(1), os), 1.09861, 1e-5);
}

TEST(Estimators, TiesGiveZero) {
  const std::vector<double> data{5, 5, 5, 1, 2};
  const auto os = ghp::order_statistics(data, 2);
  EXPECT_EQ(os.spacing(1), 0.0);
  EXPECT_EQ(os.spacing(2), 0.0);
  EXPECT_EQ(ghp::t_n(WeightFunction::power(1), os), 0.0);
  EXPECT_THROW(ghp::order_statistics(data, 2, true), ghp::DataError);
  EXPECT_THROW(ghp::plugin_scale(os, Domain::frechet), ghp::DataError);
}

TEST(Estimators, OrderStatisticsErrors) {
  const std::vector<double> data{3, 0, 1};
  EXPECT_THROW(ghp::order_statistics(data, 3), ghp::DataError);
  EXPECT_THROW(ghp::order_statistics(std::vector<double>{}, 1), ghp::DataError);
  try {
    ghp::order_statistics(data, 2);
    FAIL() << "expected a positivity error";
  } catch (const ghp::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("1 of the top"), std::string::npos);
  }
  EXPECT_NO_THROW(ghp::order_statistics(data, 1));
  EXPECT_THROW(ghp::OrderedSample(10, {1.0, 2.0}), ghp::DataError);
  EXPECT_THROW(ghp::OrderedSample(1, {2.0, 1.0}), ghp::DataError);
}

TEST(Estimators, TnExamples) {
  EXPECT_DOUBLE_EQ(ghp::t_n(WeightFunction::power(1), unit_spacings()), 6.0);
  EXPECT_DOUBLE_EQ(ghp::hill(unit_spacings()), 2.0);
  const std::vector<double> constant(20, 7.0);
  const auto os = ghp::order_statistics(constant, 5);
  EXPECT_EQ(ghp::t_n(WeightFunction::power(0.5), os), 0.0);
  EXPECT_EQ(ghp::hill(os), 0.0);
}

TEST(Estimators, TnLinearInWeightAndEquivariantInScale) {
  const auto os = pareto_sample(0.7, 10'000, 200, 1);
  const auto f = WeightFunction::power(0.8);
  const auto g = WeightFunction::power(1.3);
  const double tf = ghp::t_n(f, os);
  const double tg = ghp::t_n(g, os);
  EXPECT_NEAR(ghp::t_n(2.5 * f + g, os), 2.5 * tf + tg, 1e-11 * (2.5 * tf + tg));
  // X -> c X^a maps Y -> a Y + log c
  std::vector<double> shifted(os.y_top().begin(), os.y_top().end());
  for (auto& y : shifted) y = 3.0 * y + 1.7;
  const ghp::OrderedSample os2(os.n(), shifted);
  EXPECT_NEAR(ghp::t_n(f, os2), 3.0 * tf, 1e-10 * tf);
}

TEST(Estimators, TnMeanUnderPareto) {
  const double gamma = 0.5;
  const std::int64_t k = 1000;
  const int reps = 1000;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    sum += ghp::t_n(WeightFunction::power(1), pareto_sample(gamma, 100'000, k, r)) / k;
  }
  const double se = gamma / std::sqrt(static_cast<double>(k) * reps);
  EXPECT_NEAR(sum / reps, gamma, 3.0 * se);
}

TEST(Estimators, HillPerReplicate) {
  for (std::uint64_t r = 0; r < 20; ++r) {
    EXPECT_NEAR(ghp::hill(pareto_sample(0.5, 100'000, 1000, 100 + r)), 0.5, 0.05);
  }
}

TEST(Estimators, StudentizeCentering) {
  const auto f = WeightFunction::power(0.9);
  const auto norms = ghp::normalization(f, 50);
  EXPECT_NEAR(ghp::studentize(norms.a_n * 1.7, norms, Domain::gumbel, 1.7), 0.0, 1e-14);
  EXPECT_NEAR(ghp::studentize(norms.a_n * 0.4, norms, Domain::frechet, 0.4), 0.0, 1e-14);
  EXPECT_NEAR(ghp::studentize(norms.a_n + norms.sigma_n, norms, Domain::gumbel, 1.0), 1.0, 1e-14);
  EXPECT_THROW(ghp::studentize(1.0, norms, Domain::gumbel, 0.0), ghp::DomainError);
  EXPECT_THROW(ghp::studentize(1.0, f, 50, Domain::frechet, -1.0), ghp::DomainError);
}

TEST(Estimators, FrechetStudentizedVariance) {
  const auto f = WeightFunction::power(1);
  const std::int64_t k = 1000;
  const auto norms = ghp::normalization(f, k);
  std::vector<double> v;
  for (int r = 0; r < 2000; ++r) {
    const auto os = pareto_sample(1.0, 100'000, k, 5000 + r);
    v.push_back(ghp::studentize(ghp::t_n(f, os), norms, Domain::frechet, 1.0));
  }
  EXPECT_NEAR(ghp::moments(v).variance, 1.0, 0.1);
}

TEST(Estimators, PluginScale) {
  EXPECT_DOUBLE_EQ(ghp::plugin_scale(unit_spacings(), Domain::frechet), 2.0);
  EXPECT_DOUBLE_EQ(ghp::plugin_scale(unit_spacings(), Domain::gumbel), 2.0);
  EXPECT_NEAR(ghp::plugin_scale(pareto_sample(0.5, 100'000, 1000, 9), Domain::frechet), 0.5, 0.05);
  const ghp::TailModel gumbel(ghp::GumbelDeHaan{0.0, 1.0, {}, {}});
  ghp::Rng rng({78, 0});
  const ghp::OrderedSample os(100'000, ghp::sample_top_log_order_stats(gumbel, 100'000, 1000, rng));
  EXPECT_NEAR(ghp::plugin_scale(os, Domain::gumbel), 1.0, 0.1);
}

TEST(Estimators, WeibullTransform) {
  const auto z = ghp::weibull_transform(std::vector<double>{-1.0, -2.0}, 0.0);
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 0.5);
  EXPECT_THROW(ghp::weibull_transform(std::vector<double>{-1.0, 0.5}, 0.0), ghp::DataError);
  EXPECT_THROW(ghp::weibull_transform(std::vector<double>{-1.0, 0.0}, 0.0), ghp::DataError);
}

TEST(Estimators, WeibullTransformRecoversIndex) {
  const ghp::TailModel m(ghp::WeibullKaramata{0.5, 0.0, 1.0, {}, {}});
  const auto y = ghp::sample_iid(m, 100'000, {79, 0});
  const auto z = ghp::weibull_transform(y, 0.0);
  EXPECT_NEAR(ghp::hill(ghp::order_statistics(z, 1000)), 0.5, 0.05);
}

TEST(Estimators, EvaluateFillsStudentized) {
  const auto os = unit_spacings();
  const auto f = WeightFunction::power(1);
  const auto plain = ghp::evaluate(f, os);
  EXPECT_DOUBLE_EQ(plain.t_n, 6.0);
  EXPECT_FALSE(plain.v_gumbel);
  EXPECT_FALSE(plain.scale_used);
  const auto g = ghp::evaluate(f, os, Domain::gumbel, 2.0);
  EXPECT_NEAR(*g.v_gumbel, 0.0, 1e-15);
  EXPECT_EQ(*g.scale_used, 2.0);
  const auto fr = ghp::evaluate(f, os, Domain::frechet, 2.0);
  EXPECT_NEAR(*fr.v_frechet, 0.0, 1e-15);
}

TEST(Estimators, ProcessEval) {
  const auto os = pareto_sample(0.5, 1000, 50, 3);
  const std::vector<WeightFunction> same{WeightFunction::power(0.8), WeightFunction::power(0.8)};
  const auto v = ghp::process_eval(same, os, Domain::frechet, 0.5);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], v[1]);
  EXPECT_TRUE(ghp::process_eval({}, os, Domain::frechet, 0.5).empty());
}

TEST(Estimators, ProcessMatchesSingleEvaluation) {
  const auto os = pareto_sample(0.5, 10'000, 300, 4);
  const std::vector<WeightFunction> fs{WeightFunction::power(1), WeightFunction::power(0.25),
                                       WeightFunction::tabulated({1.0, 3.0, 2.0}, 0.5)};
  const ghp::GhpProcess process(fs, 300);
  std::vector<double> out(fs.size());
  process.statistics(os, out);
  const auto st = process.studentized(os, Domain::gumbel, 0.5);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double t = ghp::t_n(fs[i], os);
    EXPECT_NEAR(out[i], t, 1e-12 * t);
    EXPECT_NEAR(st[i], ghp::studentize(t, fs[i], 300, Domain::gumbel, 0.5), 1e-9);
  }
}
