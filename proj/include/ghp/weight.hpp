#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ghp {

/// One term `coeff * j^exponent` of an eventually power-law sequence.
struct PowerTerm {
  double coeff;
  double exponent;
};

/// For every j > start, the sequence equals the sum of its terms.
struct PowerTail {
  std::int64_t start = 0;
  std::vector<PowerTerm> terms;
};

/// A positive weight f on {1, 2, ...}.
///
/// Weights are immutable values built from three constructions: the power
/// class j^tau, a finite table continued past its end by a declared rule,
/// and positive scalar multiples / pointwise sums of other weights. Copies
/// share the underlying node, so passing by value is cheap.
class WeightFunction {
 public:
  /// f(j) = j^tau.
  static WeightFunction power(double tau);

  /// f(j) = values[j-1] for j <= values.size(). Past the table the weight
  /// continues as values.back() * (j / L)^extension_tau (0 gives a constant
  /// extension). Without an extension rule, evaluation past the table and
  /// the infinite series A(m, f) are unsupported.
  static WeightFunction tabulated(std::vector<double> values,
                                  std::optional<double> extension_tau);

  static WeightFunction scaled(double alpha, const WeightFunction& f);
  static WeightFunction sum(const WeightFunction& a, const WeightFunction& b);

  double operator()(std::int64_t j) const;

  /// log f(j), evaluated without forming f(j) for the power class.
  double log_value(std::int64_t j) const;

  /// An upper bound on max_{1 <= j <= k} log(f(j)/j), exact for powers and
  /// tables. Used to pick a scaling shift before summing.
  double max_log_ratio(std::int64_t k) const;

  /// Power-law form of the weight past some index; empty for a table
  /// without an extension rule.
  std::optional<PowerTail> tail() const;

  /// tau when the weight is exactly power(tau).
  std::optional<double> power_exponent() const;

  /// Largest exponent appearing in the tail (the growth rate of f).
  std::optional<double> tail_exponent() const;

  std::string label() const;

  struct Node;

 private:
  explicit WeightFunction(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

WeightFunction operator*(double alpha, const WeightFunction& f);
WeightFunction operator+(const WeightFunction& a, const WeightFunction& b);

/// Parses the weight-list grammar: comma-separated `pow:<tau>` or
/// `file:<path>[@tau]` items. A file holds one positive value per line; past
/// its end the table continues as a constant, or with exponent tau.
std::vector<WeightFunction> parse_weight_list(const std::string& text);

}  // namespace ghp
