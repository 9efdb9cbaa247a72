#include <gtest/gtest.h>

#include <cmath>

#include "ghp/diagnostics.hpp"
#include "ghp/error.hpp"
#include "ghp/ks.hpp"
#include "ghp/report.hpp"
#include "ghp/validate.hpp"

using ghp::WeightFunction;

namespace {

ghp::McConfig pareto_config(std::int64_t reps) {
  ghp::McConfig c;
  c.model = ghp::TailModel::pareto(1.0);
  c.weights = {WeightFunction::power(1.0), WeightFunction::power(0.25)};
  c.n = 10'000;
  c.k = 100;
  c.reps = reps;
  c.seed = 99;
  return c;
}

}  // namespace

TEST(Diagnostics, SerialAndParallelAreBitIdentical) {
  const auto c = pareto_config(64);
  const auto a = ghp::mc_replicates(c, ghp::Execution::serial);
  const auto b = ghp::mc_replicates(c, ghp::Execution::parallel);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values.size(), 128u);
  EXPECT_EQ(a.domain, ghp::Domain::frechet);
}

TEST(Diagnostics, SmallestRun) {
  const auto d = ghp::mc_replicates(pareto_config(2));
  EXPECT_EQ(d.reps, 2);
  for (double v : d.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Diagnostics, OracleCenteringUnderPareto) {
  auto c = pareto_config(2000);
  c.weights = {WeightFunction::power(1.0)};
  c.k = 300;
  const auto m = ghp::moments(ghp::mc_replicates(c).column(0));
  const double R = 2000.0;
  EXPECT_LT(std::fabs(m.mean), 3.0 / std::sqrt(R) * (1.0 + std::fabs(m.skewness)));
}

TEST(Diagnostics, GumbelCenteringUnderExponentialY) {
  ghp::McConfig c;
  c.model = ghp::TailModel(ghp::GumbelDeHaan{0.0, 2.0, {}, {}});
  c.weights = {WeightFunction::power(1.0)};
  c.n = 10'000;
  c.k = 300;
  c.reps = 1000;
  c.seed = 5;
  const auto d = ghp::mc_replicates(c);
  EXPECT_EQ(d.domain, ghp::Domain::gumbel);
  const auto m = ghp::moments(d.column(0));
  EXPECT_LT(std::fabs(m.mean), 3.0 / std::sqrt(1000.0) * (1.0 + std::fabs(m.skewness)));
  EXPECT_NEAR(m.variance, 1.0, 0.15);
}

TEST(Diagnostics, WeibullReplicatesAreFinite) {
  ghp::McConfig c;
  c.model = ghp::TailModel(ghp::WeibullKaramata{0.5, 1.0, 1.0, {}, {}});
  c.weights = {WeightFunction::power(1.0)};
  c.n = 100'000;
  c.k = 200;
  c.reps = 200;
  c.seed = 6;
  const auto d = ghp::mc_replicates(c);
  for (double v : d.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(std::fabs(ghp::moments(d.column(0)).mean), 0.5);
}

TEST(Diagnostics, ConfigErrors) {
  auto c = pareto_config(1);
  EXPECT_THROW(ghp::mc_replicates(c), ghp::ConfigError);
  c = pareto_config(10);
  c.k = c.n;
  EXPECT_THROW(ghp::mc_replicates(c), ghp::ConfigError);
  c = pareto_config(10);
  c.weights.clear();
  EXPECT_THROW(ghp::mc_replicates(c), ghp::ConfigError);
  c = pareto_config(10);
  c.model = ghp::TailModel(ghp::GpdModel{0.2});
  EXPECT_THROW(ghp::mc_replicates(c), ghp::ConfigError);
  c.scale_mode = ghp::ScaleMode::plugin;
  EXPECT_NO_THROW(ghp::mc_replicates(c));
}

TEST(Diagnostics, EmpiricalCovariance) {
  auto c = pareto_config(100);
  c.weights = {WeightFunction::power(1.0), WeightFunction::power(1.0)};
  EXPECT_EQ(ghp::empirical_cov(c, 0, 1), 1.0);
  const auto d = ghp::mc_replicates(pareto_config(100));
  EXPECT_THROW(ghp::empirical_cov(d, 0, 2), ghp::InputError);
  EXPECT_THROW(ghp::empirical_cov(ghp::mc_replicates(pareto_config(10)), 0, 1),
               ghp::ConfigError);
}

TEST(Diagnostics, RhoTrace) {
  const std::vector<std::int64_t> grid{100, 1000, 10'000};
  for (const auto& p :
       ghp::rho_convergence_trace(WeightFunction::power(1), WeightFunction::power(1), grid)) {
    EXPECT_EQ(p.rho_sq, 0.0);
    EXPECT_EQ(p.limit, 0.0);
  }
  const auto trace =
      ghp::rho_convergence_trace(WeightFunction::power(0.9), WeightFunction::power(0.6), grid);
  ASSERT_EQ(trace.size(), 3u);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    EXPECT_NEAR(trace[i].limit, 0.4, 1e-12);
    if (i > 0) {
      EXPECT_LT(std::fabs(trace[i].rho_sq - 0.4), std::fabs(trace[i - 1].rho_sq - 0.4));
    }
  }
  const std::vector<std::int64_t> bad{100, 100};
  EXPECT_THROW(
      ghp::rho_convergence_trace(WeightFunction::power(0.9), WeightFunction::power(0.6), bad),
      ghp::InputError);
  EXPECT_THROW(ghp::rho_convergence_trace(WeightFunction::power(0.9),
                                          WeightFunction::tabulated({1.0}, 0.5), grid),
               ghp::UnsupportedError);
}

TEST(Diagnostics, PooledMalmquist) {
  const auto a = ghp::pooled_malmquist(10'000, 100, 100, 3, ghp::Execution::serial);
  const auto b = ghp::pooled_malmquist(10'000, 100, 100, 3, ghp::Execution::parallel);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 10'000u);
  EXPECT_LT(ghp::ks_one_sample(a, ghp::exp1_cdf), 0.02);
  EXPECT_THROW(ghp::pooled_malmquist(100, 100, 5, 3), ghp::ConfigError);
}

TEST(Diagnostics, ReportRoundTrip) {
  auto c = pareto_config(200);
  const auto report = ghp::mc_studentized(c);
  EXPECT_TRUE(report.ks_vs_limit_law.has_value());
  ASSERT_EQ(report.summaries.size(), 2u);
  EXPECT_FALSE(report.summaries[0].ks_vs_limit_law.has_value());
  EXPECT_TRUE(report.summaries[1].ks_vs_limit_law.has_value());
  const auto doc = ghp::parse_report(ghp::serialize(report));
  EXPECT_EQ(doc.at("config").at("n"), "10000");
  EXPECT_EQ(doc.at("config").at("R"), "200");
  EXPECT_EQ(doc.at("config").at("seed"), "99");
  EXPECT_EQ(doc.at("config").at("f_list"), "pow:1,pow:0.25");
  EXPECT_EQ(doc.at("summaries.1").at("f"), "pow:0.25");
  EXPECT_NEAR(std::stod(doc.at("").at("ks_vs_normal")), report.ks_vs_normal, 1e-9);
  EXPECT_NEAR(std::stod(doc.at("summaries.0").at("mean")), report.summaries[0].mean, 1e-9);
  EXPECT_THROW(ghp::parse_report("[config\n"), ghp::InputError);
  EXPECT_THROW(ghp::parse_report("n 3\n"), ghp::InputError);
}

TEST(Validation, ModeParsing) {
  EXPECT_EQ(ghp::parse_validation_mode("limit-law"), ghp::ValidationMode::limit_law);
  EXPECT_EQ(ghp::parse_validation_mode("rho"), ghp::ValidationMode::rho);
  EXPECT_FALSE(ghp::parse_validation_mode("bogus").has_value());
  for (auto m : {ghp::ValidationMode::normality, ghp::ValidationMode::limit_law,
                 ghp::ValidationMode::covariance, ghp::ValidationMode::malmquist,
                 ghp::ValidationMode::rho}) {
    EXPECT_EQ(ghp::parse_validation_mode(ghp::to_string(m)), m);
  }
}

TEST(Validation, ConfigErrors) {
  ghp::ValidationConfig c;
  c.reps = 1;
  EXPECT_THROW(ghp::run_validation(c), ghp::ConfigError);
  c = {};
  c.mode = ghp::ValidationMode::limit_law;
  c.weights = std::vector<WeightFunction>{WeightFunction::power(1.0)};
  c.reps = 10;
  EXPECT_THROW(ghp::run_validation(c), ghp::ConfigError);
  c = {};
  c.mode = ghp::ValidationMode::covariance;
  c.weights = std::vector<WeightFunction>{WeightFunction::power(1.0)};
  EXPECT_THROW(ghp::run_validation(c), ghp::ConfigError);
}

TEST(Validation, MalmquistGatePasses) {
  ghp::ValidationConfig c;
  c.mode = ghp::ValidationMode::malmquist;
  c.seed = 1;
  const auto out = ghp::run_validation(c);
  EXPECT_TRUE(out.passed());
  EXPECT_EQ(out.first_failure(), nullptr);
  ASSERT_FALSE(out.gates.empty());
  EXPECT_LT(out.gates[0].value, 0.02);
}

TEST(Validation, GateOverrideCanFail) {
  ghp::ValidationConfig c;
  c.mode = ghp::ValidationMode::malmquist;
  c.seed = 1;
  c.gate = 1e-6;
  const auto out = ghp::run_validation(c);
  EXPECT_FALSE(out.passed());
  ASSERT_NE(out.first_failure(), nullptr);
  EXPECT_NE(out.first_failure()->describe().find("1e-06"), std::string::npos)
      << out.first_failure()->describe();
}
