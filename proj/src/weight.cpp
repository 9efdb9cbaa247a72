#include "ghp/weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include "ghp/error.hpp"
#include "ghp/format.hpp"

namespace ghp {

namespace {

struct PowerNode {
  double tau;
};

struct TableNode {
  std::vector<double> values;
  std::optional<double> extension_tau;
};

struct ScaledNode {
  double alpha;
  std::shared_ptr<const WeightFunction::Node> inner;
};

struct SumNode {
  std::shared_ptr<const WeightFunction::Node> lhs;
  std::shared_ptr<const WeightFunction::Node> rhs;
};

double log_add(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (std::isinf(hi) && hi < 0) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

struct WeightFunction::Node {
  std::variant<PowerNode, TableNode, ScaledNode, SumNode> v;
};

namespace {

using Node = WeightFunction::Node;

double eval(const Node& node, std::int64_t j);
double log_eval(const Node& node, std::int64_t j);

double table_eval(const TableNode& t, std::int64_t j) {
  const auto size = static_cast<std::int64_t>(t.values.size());
  if (j <= size) return t.values[static_cast<std::size_t>(j - 1)];
  if (!t.extension_tau) {
    throw UnsupportedError("tabulated weight evaluated at j=" + std::to_string(j) +
                           " past its " + std::to_string(size) +
                           " entries and no extension rule is declared");
  }
  if (*t.extension_tau == 0.0) return t.values.back();
  return t.values.back() *
         std::pow(static_cast<double>(j) / static_cast<double>(size), *t.extension_tau);
}

double eval(const Node& node, std::int64_t j) {
  return std::visit(
      [j](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PowerNode>) {
          if (n.tau == 1.0) return static_cast<double>(j);
          if (n.tau == 0.0) return 1.0;
          return std::pow(static_cast<double>(j), n.tau);
        } else if constexpr (std::is_same_v<T, TableNode>) {
          return table_eval(n, j);
        } else if constexpr (std::is_same_v<T, ScaledNode>) {
          return n.alpha * eval(*n.inner, j);
        } else {
          return eval(*n.lhs, j) + eval(*n.rhs, j);
        }
      },
      node.v);
}

double log_eval(const Node& node, std::int64_t j) {
  return std::visit(
      [j](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PowerNode>) {
          return n.tau * std::log(static_cast<double>(j));
        } else if constexpr (std::is_same_v<T, TableNode>) {
          const auto size = static_cast<std::int64_t>(n.values.size());
          if (j <= size || !n.extension_tau) return std::log(table_eval(n, j));
          return std::log(n.values.back()) +
                 *n.extension_tau * (std::log(static_cast<double>(j)) -
                                     std::log(static_cast<double>(size)));
        } else if constexpr (std::is_same_v<T, ScaledNode>) {
          return std::log(n.alpha) + log_eval(*n.inner, j);
        } else {
          return log_add(log_eval(*n.lhs, j), log_eval(*n.rhs, j));
        }
      },
      node.v);
}

// (tau - 1) * log j is monotone in j, so its max over [lo, hi] is at an end.
double power_ratio_max(double tau, double lo, double hi) {
  return std::max((tau - 1.0) * std::log(lo), (tau - 1.0) * std::log(hi));
}

double max_log_ratio(const Node& node, std::int64_t k) {
  return std::visit(
      [k](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PowerNode>) {
          return power_ratio_max(n.tau, 1.0, static_cast<double>(k));
        } else if constexpr (std::is_same_v<T, TableNode>) {
          const auto size = static_cast<std::int64_t>(n.values.size());
          double best = -INFINITY;
          for (std::int64_t j = 1; j <= std::min(k, size); ++j) {
            best = std::max(best, std::log(n.values[static_cast<std::size_t>(j - 1)]) -
                                      std::log(static_cast<double>(j)));
          }
          if (k > size) {
            if (!n.extension_tau) table_eval(n, k);  // throws
            const double base = std::log(n.values.back()) -
                                *n.extension_tau * std::log(static_cast<double>(size));
            best = std::max(best, base + power_ratio_max(*n.extension_tau,
                                                         static_cast<double>(size + 1),
                                                         static_cast<double>(k)));
          }
          return best;
        } else if constexpr (std::is_same_v<T, ScaledNode>) {
          return std::log(n.alpha) + max_log_ratio(*n.inner, k);
        } else {
          return log_add(max_log_ratio(*n.lhs, k), max_log_ratio(*n.rhs, k));
        }
      },
      node.v);
}

std::optional<PowerTail> tail_of(const Node& node) {
  return std::visit(
      [](const auto& n) -> std::optional<PowerTail> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PowerNode>) {
          return PowerTail{0, {{1.0, n.tau}}};
        } else if constexpr (std::is_same_v<T, TableNode>) {
          if (!n.extension_tau) return std::nullopt;
          const auto size = static_cast<std::int64_t>(n.values.size());
          const double coeff =
              n.values.back() * std::pow(static_cast<double>(size), -*n.extension_tau);
          return PowerTail{size, {{coeff, *n.extension_tau}}};
        } else if constexpr (std::is_same_v<T, ScaledNode>) {
          auto inner = tail_of(*n.inner);
          if (!inner) return std::nullopt;
          for (auto& term : inner->terms) term.coeff *= n.alpha;
          return inner;
        } else {
          auto lhs = tail_of(*n.lhs);
          auto rhs = tail_of(*n.rhs);
          if (!lhs || !rhs) return std::nullopt;
          PowerTail out{std::max(lhs->start, rhs->start), lhs->terms};
          out.terms.insert(out.terms.end(), rhs->terms.begin(), rhs->terms.end());
          return out;
        }
      },
      node.v);
}

std::string label_of(const Node& node) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PowerNode>) {
          return "pow:" + format_number(n.tau);
        } else if constexpr (std::is_same_v<T, TableNode>) {
          std::string s = "table[" + std::to_string(n.values.size()) + "]";
          if (n.extension_tau) s += "@" + format_number(*n.extension_tau);
          return s;
        } else if constexpr (std::is_same_v<T, ScaledNode>) {
          return format_number(n.alpha) + "*" + label_of(*n.inner);
        } else {
          return "(" + label_of(*n.lhs) + "+" + label_of(*n.rhs) + ")";
        }
      },
      node.v);
}

}  // namespace

WeightFunction::WeightFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

WeightFunction WeightFunction::power(double tau) {
  if (!std::isfinite(tau)) throw DomainError("power weight exponent must be finite");
  return WeightFunction(std::make_shared<const Node>(Node{PowerNode{tau}}));
}

WeightFunction WeightFunction::tabulated(std::vector<double> values,
                                         std::optional<double> extension_tau) {
  if (values.empty()) throw InputError("tabulated weight needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw InputError("tabulated weight value " + std::to_string(i + 1) +
                       " is not a positive finite number");
    }
  }
  if (extension_tau && !std::isfinite(*extension_tau)) {
    throw InputError("tabulated weight extension exponent must be finite");
  }
  return WeightFunction(
      std::make_shared<const Node>(Node{TableNode{std::move(values), extension_tau}}));
}

WeightFunction WeightFunction::scaled(double alpha, const WeightFunction& f) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("weight scale factor must be positive and finite");
  }
  return WeightFunction(std::make_shared<const Node>(Node{ScaledNode{alpha, f.node_}}));
}

WeightFunction WeightFunction::sum(const WeightFunction& a, const WeightFunction& b) {
  return WeightFunction(std::make_shared<const Node>(Node{SumNode{a.node_, b.node_}}));
}

double WeightFunction::operator()(std::int64_t j) const {
  if (j < 1) throw DomainError("weights are defined on j >= 1");
  return eval(*node_, j);
}

double WeightFunction::log_value(std::int64_t j) const {
  if (j < 1) throw DomainError("weights are defined on j >= 1");
  return log_eval(*node_, j);
}

double WeightFunction::max_log_ratio(std::int64_t k) const {
  if (k < 1) throw DomainError("k must be at least 1");
  return ghp::max_log_ratio(*node_, k);
}

std::optional<PowerTail> WeightFunction::tail() const { return tail_of(*node_); }

std::optional<double> WeightFunction::power_exponent() const {
  if (const auto* p = std::get_if<PowerNode>(&node_->v)) return p->tau;
  return std::nullopt;
}

std::optional<double> WeightFunction::tail_exponent() const {
  const auto t = tail();
  if (!t) return std::nullopt;
  double best = -INFINITY;
  for (const auto& term : t->terms) best = std::max(best, term.exponent);
  return best;
}

std::string WeightFunction::label() const { return label_of(*node_); }

WeightFunction operator*(double alpha, const WeightFunction& f) {
  return WeightFunction::scaled(alpha, f);
}

WeightFunction operator+(const WeightFunction& a, const WeightFunction& b) {
  return WeightFunction::sum(a, b);
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("cannot parse " + what + " '" + text + "' as a number");
  }
  return value;
}

WeightFunction load_table(const std::string& spec) {
  std::string path = spec;
  double extension = 0.0;
  if (const auto at = spec.rfind('@'); at != std::string::npos) {
    path = spec.substr(0, at);
    extension = parse_double(spec.substr(at + 1), "table extension exponent");
  }
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weight table '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    values.push_back(parse_double(line.substr(first, last - first + 1),
                                  path + ":" + std::to_string(line_no)));
  }
  return WeightFunction::tabulated(std::move(values), extension);
}

}  // namespace

std::vector<WeightFunction> parse_weight_list(const std::string& text) {
  std::vector<WeightFunction> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.rfind("pow:", 0) == 0) {
      out.push_back(WeightFunction::power(parse_double(item.substr(4), "weight exponent")));
    } else if (item.rfind("file:", 0) == 0) {
      out.push_back(load_table(item.substr(5)));
    } else {
      throw ConfigError("unknown weight '" + item + "' (expected pow:<tau> or file:<path>)");
    }
  }
  if (out.empty()) throw ConfigError("weight list is empty");
  return out;
}

}  // namespace ghp
