#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghp/diagnostics.hpp"

namespace ghp {

enum class ValidationMode { normality, limit_law, covariance, malmquist, rho };

std::optional<ValidationMode> parse_validation_mode(const std::string& text);
std::string to_string(ValidationMode mode);

/// A pass/fail threshold on one reported quantity. Gates computed in plugin
/// scale mode are reported but not binding.
struct Gate {
  std::string name;
  double value = 0.0;
  std::string relation;
  double threshold = 0.0;
  bool passed = false;
  bool binding = true;

  std::string describe() const;
};

/// Unset fields take the mode's default experiment:
///   normality   pure Pareto gamma=1, pow:1, n=1e4, k=300, R=2000, KS gate 0.05
///   limit-law   pure Pareto gamma=1, pow:0.25, n=1e4, k=300, R=2000, KS gate 0.06
///   covariance  pure Pareto gamma=1, pow:1,pow:0.75, n=1e5, k=1e3, R=2000, gate 0.03
///   malmquist   n=1e4, k=100, R=100 (1e4 pooled spacings), KS gate 0.02
///   rho         pow:0.9,pow:0.6 over k in {1e2, 1e3, 1e4, 1e5}, gate 0.01
struct ValidationConfig {
  ValidationMode mode = ValidationMode::normality;
  std::optional<TailModel> model;
  std::optional<std::vector<WeightFunction>> weights;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> reps;
  std::uint64_t seed = 0;
  ScaleMode scale_mode = ScaleMode::oracle;
  double limit_tol = 1e-6;
  std::vector<std::int64_t> k_grid;
  /// Overrides the mode's primary gate threshold.
  std::optional<double> gate;
};

struct ValidationOutcome {
  MonteCarloReport report;
  std::vector<Gate> gates;

  bool passed() const;
  /// First binding gate that failed, if any.
  const Gate* first_failure() const;
};

ValidationOutcome run_validation(const ValidationConfig& config,
                                 Execution execution = Execution::parallel);

}  // namespace ghp
