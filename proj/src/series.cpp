#include "ghp/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ghp/error.hpp"
#include "ghp/summation.hpp"

namespace ghp {

namespace {

// B_{2k} / (2k)! for k = 1..7.
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,                 // B2 / 2!
    -1.0 / 720.0,               // B4 / 4!
    1.0 / 30240.0,              // B6 / 6!
    -1.0 / 1209600.0,           // B8 / 8!
    1.0 / 47900160.0,           // B10 / 10!
    -691.0 / 1307674368000.0,   // B12 / 12!
    1.0 / 74724249600.0,        // B14 / 14!
};

constexpr std::int64_t kEulerMaclaurinCutoff = 32;
constexpr std::int64_t kMaxPartialTerms = 400'000'000;

void merge_terms(PowerSeries& series) {
  std::sort(series.begin(), series.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent > b.exponent; });
  PowerSeries merged;
  for (const auto& term : series) {
    if (!merged.empty() && merged.back().exponent == term.exponent) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  series = std::move(merged);
}

}  // namespace

double integer_power(double x, int m) {
  double out = 1.0;
  for (int i = 0; i < m; ++i) out *= x;
  return out;
}

SeriesValue zeta_tail(double s, std::int64_t J) {
  if (!(s > 1.0)) throw DomainError("zeta tail requires s > 1");
  if (J < 0) throw DomainError("zeta tail start must be nonnegative");
  const std::int64_t cutoff = std::max(J + 1, kEulerMaclaurinCutoff);
  CompensatedSum sum;
  // descending so the small terms accumulate first
  for (std::int64_t j = cutoff - 1; j > J; --j) sum += std::pow(static_cast<double>(j), -s);

  const double M = static_cast<double>(cutoff);
  const double m_pow = std::pow(M, -s);
  sum += M * m_pow / (s - 1.0);
  sum += 0.5 * m_pow;
  // rising factorial s (s+1) ... (s+2k-2), times M^{-s-2k+1}
  double rising = s;
  double m_factor = m_pow / M;
  for (int k = 1; k <= 6; ++k) {
    sum += kBernoulliOverFactorial[k - 1] * rising * m_factor;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    m_factor /= M * M;
  }
  const double omitted = std::fabs(kBernoulliOverFactorial[6] * rising * m_factor);
  const double value = sum.value();
  return {value, omitted + 4.0 * std::numeric_limits<double>::epsilon() * value};
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back({x.coeff * y.coeff, x.exponent + y.exponent});
  }
  merge_terms(out);
  return out;
}

PowerSeries raise(const PowerSeries& a, int m) {
  if (m < 0) throw DomainError("power series exponent must be nonnegative");
  PowerSeries out{{1.0, 0.0}};
  for (int i = 0; i < m; ++i) out = multiply(out, a);
  return out;
}

double evaluate(const PowerSeries& a, std::int64_t j) {
  const double x = static_cast<double>(j);
  double total = 0.0;
  for (const auto& term : a) total += term.coeff * std::pow(x, term.exponent);
  return total;
}

std::optional<SeriesValue> tail_sum(const PowerSeries& a, std::int64_t J) {
  SeriesValue out;
  for (const auto& term : a) {
    if (term.coeff == 0.0) continue;
    if (!(term.exponent < -1.0)) return std::nullopt;
    const auto z = zeta_tail(-term.exponent, J);
    out.value += term.coeff * z.value;
    out.error_bound += std::fabs(term.coeff) * z.error_bound;
  }
  return out;
}

std::optional<PowerTail> ratio_tail(const WeightFunction& f) {
  auto tail = f.tail();
  if (!tail) return std::nullopt;
  for (auto& term : tail->terms) term.exponent -= 1.0;
  return tail;
}

SeriesSum ratio_series(const WeightFunction& f, int m, double tol) {
  if (m < 1) throw DomainError("series order must be at least 1");
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  const auto tail = ratio_tail(f);
  if (!tail) {
    throw UnsupportedError("weight " + f.label() +
                           " has no extension rule; its infinite series is undefined");
  }
  const PowerSeries expanded = raise(tail->terms, m);
  for (const auto& term : expanded) {
    if (term.coeff != 0.0 && !(term.exponent < -1.0)) return SeriesSum{true, INFINITY, 0.0, 0};
  }

  std::int64_t J = std::max<std::int64_t>(tail->start, 64);
  CompensatedSum partial;
  std::int64_t done = 0;
  while (true) {
    for (std::int64_t j = done + 1; j <= J; ++j) {
      partial += integer_power(f(j) / static_cast<double>(j), m);
    }
    done = J;
    const auto rest = tail_sum(expanded, J);
    const double value = partial.value() + rest->value;
    const double error = rest->error_bound +
                         4.0 * std::numeric_limits<double>::epsilon() * std::fabs(value);
    if (error <= tol) return SeriesSum{false, value, error, J};
    if (J >= kMaxPartialTerms) {
      throw NumericError("series for " + f.label() + " did not reach tolerance " +
                         std::to_string(tol));
    }
    J = std::min(J * 8, kMaxPartialTerms);
  }
}

}  // namespace ghp
