// ghp: estimation, simulation, limit-law sampling and Monte Carlo validation
// for the functional generalized Hill process.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghp/error.hpp"
#include "ghp/estimators.hpp"
#include "ghp/format.hpp"
#include "ghp/limit_laws.hpp"
#include "ghp/report.hpp"
#include "ghp/samplers.hpp"
#include "ghp/validate.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kData = 3, kDomain = 4, kGate = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string model;
  std::optional<double> gamma;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::string k_grid;
  std::string weights;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> reps;
  std::string scale;
  std::string mode;
  std::string out;
  std::optional<double> tol;
  std::string formula = "derived";
  std::optional<double> x0;
  std::optional<double> gate;
  std::string treatment = "gaussian";
  std::vector<double> mgf_t;
};

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// One number per line; blank lines and '#' comments are skipped.
std::vector<double> read_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string item = trim(line);
    if (item.empty() || item.front() == '#') continue;
    double value = 0.0;
    const char* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": cannot parse '" + item +
                       "' as a finite number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw ghp::DataError("insufficient data: '" + path + "' holds no values");
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::int64_t value = 0;
  const std::string item = trim(text);
  const char* last = item.data() + item.size();
  auto [ptr, ec] = std::from_chars(item.data(), last, value);
  if (ec != std::errc{} || ptr != last) {
    throw UsageError("cannot parse " + what + " '" + text + "' as an integer");
  }
  return value;
}

// "a:b:step" (inclusive arithmetic grid) or a comma-separated list.
std::vector<std::int64_t> parse_k_grid(const std::string& text) {
  std::vector<std::int64_t> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--k-grid expects a:b:step, got '" + text + "'");
    const auto a = parse_int(parts[0], "k-grid start");
    const auto b = parse_int(parts[1], "k-grid end");
    const auto step = parse_int(parts[2], "k-grid step");
    if (a < 1 || b < a || step < 1) {
      throw UsageError("--k-grid needs 1 <= a <= b and step >= 1, got '" + text + "'");
    }
    for (std::int64_t k = a; k <= b; k += step) grid.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) grid.push_back(parse_int(part, "k-grid entry"));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
        throw UsageError("--k-grid list must be positive and strictly ascending");
      }
    }
  }
  if (grid.empty()) throw UsageError("--k-grid is empty");
  return grid;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string join_labels(const std::vector<ghp::WeightFunction>& weights) {
  std::vector<std::string> labels;
  for (const auto& f : weights) labels.push_back(f.label());
  return join(labels, ",");
}

std::string join_ints(const std::vector<std::int64_t>& xs) {
  std::vector<std::string> items;
  for (auto x : xs) items.push_back(std::to_string(x));
  return join(items, ",");
}

std::string opt_number(const std::optional<double>& x) {
  return x ? ghp::format_number(*x) : "none";
}

// --model and --gamma (pure Pareto shorthand) are alternatives.
std::optional<ghp::TailModel> model_from(const Options& o) {
  if (!o.model.empty() && o.gamma) throw UsageError("give either --model or --gamma, not both");
  if (!o.model.empty()) return ghp::parse_model_spec(o.model);
  if (o.gamma) return ghp::TailModel::pareto(*o.gamma);
  return std::nullopt;
}

ghp::ScaleMode scale_from(const std::string& text) {
  if (text == "oracle") return ghp::ScaleMode::oracle;
  if (text == "plugin") return ghp::ScaleMode::plugin;
  throw UsageError("--scale must be oracle or plugin, got '" + text + "'");
}

int cmd_estimate(const Options& o) {
  if (!o.model.empty()) throw UsageError("estimate reads --input; --model is not accepted");
  if (o.k && !o.k_grid.empty()) throw UsageError("give either --k or --k-grid, not both");
  if (!o.k && o.k_grid.empty()) throw UsageError("estimate needs --k or --k-grid");
  const auto grid = o.k ? std::vector<std::int64_t>{*o.k} : parse_k_grid(o.k_grid);
  const auto weights = ghp::parse_weight_list(o.weights.empty() ? "pow:1" : o.weights);
  const auto scale_mode = scale_from(o.scale.empty() ? "plugin" : o.scale);
  if (scale_mode == ghp::ScaleMode::oracle && !o.gamma) {
    throw UsageError("--scale oracle needs the true scale via --gamma");
  }

  auto data = read_data(o.input);
  if (o.x0) data = ghp::weibull_transform(data, *o.x0);

  std::ostringstream out;
  out << "# command=estimate\n"
      << "# input=" << o.input << "\n"
      << "# n=" << data.size() << "\n"
      << "# k_grid=" << join_ints(grid) << "\n"
      << "# weights=" << join_labels(weights) << "\n"
      << "# scale=" << ghp::to_string(scale_mode) << "\n"
      << "# gamma=" << opt_number(o.gamma) << "\n"
      << "# x0=" << opt_number(o.x0) << "\n"
      << "# seed=" << o.seed << "\n";
  out << "k\tf\tt_n\thill\ta_n\tsigma_n\tscale\tv_gumbel\tv_frechet\n";
  for (const auto k : grid) {
    const auto os = ghp::order_statistics(data, k);
    const double hill = ghp::hill(os);
    const double scale =
        scale_mode == ghp::ScaleMode::oracle ? *o.gamma : ghp::plugin_scale(os, ghp::Domain::frechet);
    for (const auto& f : weights) {
      const auto r = ghp::evaluate(f, os);
      const double vg = ghp::studentize(r.t_n, r.norms, ghp::Domain::gumbel, scale);
      const double vf = ghp::studentize(r.t_n, r.norms, ghp::Domain::frechet, scale);
      out << k << '\t' << f.label() << '\t' << ghp::format_number(r.t_n) << '\t'
          << ghp::format_number(hill) << '\t' << ghp::format_number(r.norms.a_n) << '\t'
          << ghp::format_number(r.norms.sigma_n) << '\t' << ghp::format_number(scale) << '\t'
          << ghp::format_number(vg) << '\t' << ghp::format_number(vf) << '\n';
    }
  }
  Sink(o.out).stream() << out.str();
  return kOk;
}

int cmd_simulate(const Options& o) {
  const auto model = model_from(o);
  if (!model) throw UsageError("simulate needs --model or --gamma");
  if (!o.n) throw UsageError("simulate needs --n");
  if (*o.n < 1) throw ghp::ConfigError("--n must be at least 1");
  const auto y = ghp::sample_iid(*model, *o.n, {o.seed, 0});

  Sink sink(o.out);
  auto& out = sink.stream();
  out << "# command=simulate\n"
      << "# " << model->spec() << "\n"
      << "# n=" << *o.n << "\n"
      << "# seed=" << o.seed << "\n";
  for (double v : y) out << ghp::format_number(std::exp(v)) << '\n';
  return kOk;
}

int cmd_limit_sample(const Options& o) {
  const auto weights = ghp::parse_weight_list(o.weights.empty() ? "pow:0" : o.weights);
  if (weights.size() != 1) throw UsageError("limit-sample takes exactly one weight");
  const auto count = o.n.value_or(10'000);
  if (count < 1) throw ghp::ConfigError("--n (draw count) must be at least 1");
  ghp::TailTreatment treatment;
  if (o.treatment == "gaussian") {
    treatment = ghp::TailTreatment::gaussian;
  } else if (o.treatment == "drop") {
    treatment = ghp::TailTreatment::drop;
  } else {
    throw UsageError("--tail must be gaussian or drop");
  }
  ghp::MgfFormula formula;
  if (o.formula == "derived") {
    formula = ghp::MgfFormula::derived;
  } else if (o.formula == "printed") {
    formula = ghp::MgfFormula::printed;
  } else {
    throw UsageError("--formula must be derived or printed");
  }

  const double tol = o.tol.value_or(1e-6);
  const auto spec = ghp::make_limit_law(weights[0], tol, treatment);
  const auto draws = ghp::sample_limit_L_streams(spec, o.seed, 0, count, true);

  std::ostringstream out;
  out << "# command=limit-sample\n"
      << "# f=" << weights[0].label() << "\n"
      << "# n=" << count << "\n"
      << "# seed=" << o.seed << "\n"
      << "# tol=" << ghp::format_number(tol) << "\n"
      << "# tail=" << o.treatment << "\n"
      << "# J=" << spec.truncation_J << "\n"
      << "# tail_var_bound=" << ghp::format_number(spec.tail_var_bound) << "\n"
      << "# tail_cumulant_bound=" << ghp::format_number(spec.tail_cumulant_bound) << "\n";
  if (!o.mgf_t.empty()) {
    out << "# formula=" << o.formula << "\n";
    for (double t : o.mgf_t) {
      const double ts[] = {t};
      const auto m = ghp::mgf_L_joint(weights, ts, 1e-13, formula);
      double empirical = 0.0;
      for (double x : draws) empirical += std::exp(t * x);
      empirical /= static_cast<double>(draws.size());
      out << "# mgf(t=" << ghp::format_number(t) << ")=" << ghp::format_number(m.value)
          << " empirical=" << ghp::format_number(empirical) << "\n";
    }
  }
  for (double x : draws) out << ghp::format_number(x) << '\n';
  Sink(o.out).stream() << out.str();
  return kOk;
}

int cmd_validate(const Options& o) {
  if (o.mode.empty()) throw UsageError("validate needs --mode");
  const auto mode = ghp::parse_validation_mode(o.mode);
  if (!mode) {
    throw UsageError("unknown --mode '" + o.mode +
                     "' (expected normality, limit-law, covariance, malmquist or rho)");
  }
  ghp::ValidationConfig config;
  config.mode = *mode;
  config.model = model_from(o);
  if (!o.weights.empty()) config.weights = ghp::parse_weight_list(o.weights);
  config.n = o.n;
  config.k = o.k;
  if (o.reps) {
    if (*o.reps < 1) throw ghp::ConfigError("--reps must be at least 1");
    config.reps = o.reps;
  }
  config.seed = o.seed;
  config.scale_mode = scale_from(o.scale.empty() ? "oracle" : o.scale);
  if (o.tol) config.limit_tol = *o.tol;
  if (!o.k_grid.empty()) config.k_grid = parse_k_grid(o.k_grid);
  config.gate = o.gate;

  const auto outcome = ghp::run_validation(config);

  Sink sink(o.out);
  auto& out = sink.stream();
  out << ghp::serialize(outcome.report);
  out << "\n[validation]\n"
      << "mode = " << ghp::to_string(config.mode) << "\n"
      << "limit_tol = " << ghp::format_number(config.limit_tol) << "\n"
      << "k_grid = " << (config.k_grid.empty() ? "default" : join_ints(config.k_grid)) << "\n"
      << "gate_override = " << opt_number(config.gate) << "\n"
      << "passed = " << (outcome.passed() ? "true" : "false") << "\n";
  for (const auto& g : outcome.gates) out << "gate." << g.name << " = " << g.describe() << "\n";
  out.flush();

  if (const auto* g = outcome.first_failure()) {
    throw GateFailure("validation gate failed: " + g->name + " (" + g->describe() + ")");
  }
  return kOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional generalized Hill process: estimation and validation"};
  app.require_subcommand(1);
  Options o;

  auto* est = app.add_subcommand("estimate", "T_n(f), Hill and studentized values from data");
  est->add_option("--input", o.input, "data file, one value per line")->required();
  est->add_option("--k", o.k, "number of top spacings");
  est->add_option("--k-grid", o.k_grid, "k sweep a:b:step or comma list");
  est->add_option("--weights", o.weights, "weight list, e.g. pow:1,pow:0.75 (default pow:1)");
  est->add_option("--scale", o.scale, "oracle or plugin (default plugin)");
  est->add_option("--gamma", o.gamma, "true scale for --scale oracle");
  est->add_option("--x0", o.x0, "upper endpoint; applies z = 1/(x0 - x) first");
  est->add_option("--model", o.model, "not accepted (estimate reads data)");
  add_common(est, o);

  auto* sim = app.add_subcommand("simulate", "sample raw values exp(Y) from a tail model");
  sim->add_option("--model", o.model, "model spec, e.g. \"model=frechet gamma=0.5\"");
  sim->add_option("--gamma", o.gamma, "pure Pareto shorthand");
  sim->add_option("--n", o.n, "sample size");
  add_common(sim, o);

  auto* val = app.add_subcommand("validate", "Monte Carlo check of a limit statement");
  val->add_option("--mode", o.mode, "normality, limit-law, covariance, malmquist or rho");
  val->add_option("--model", o.model, "model spec");
  val->add_option("--gamma", o.gamma, "pure Pareto shorthand");
  val->add_option("--weights", o.weights, "weight list");
  val->add_option("--n", o.n, "sample size");
  val->add_option("--k", o.k, "number of top spacings");
  val->add_option("--k-grid", o.k_grid, "k grid for rho mode");
  val->add_option("--reps", o.reps, "replicate count R");
  val->add_option("--scale", o.scale, "oracle or plugin (default oracle)");
  val->add_option("--tol", o.tol, "limit-law truncation tolerance (default 1e-6)");
  val->add_option("--gate", o.gate, "override the primary gate threshold");
  add_common(val, o);

  auto* lim = app.add_subcommand("limit-sample", "draws of the limit law L(f)");
  lim->add_option("--weights", o.weights, "a single weight (default pow:0)");
  lim->add_option("--n,--count", o.n, "number of draws (default 10000)");
  lim->add_option("--tol", o.tol, "truncation tolerance (default 1e-6)");
  lim->add_option("--tail", o.treatment, "tail past J: gaussian or drop")->capture_default_str();
  lim->add_option("--formula", o.formula, "mgf formula for --mgf-t: derived or printed")
      ->capture_default_str();
  lim->add_option("--mgf-t", o.mgf_t, "report analytic and empirical mgf at these t")
      ->delimiter(',');
  add_common(lim, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (est->parsed()) return cmd_estimate(o);
    if (sim->parsed()) return cmd_simulate(o);
    if (val->parsed()) return cmd_validate(o);
    return cmd_limit_sample(o);
  } catch (const GateFailure& e) {
    std::cerr << "ghp: " << e.what() << '\n';
    return kGate;
  } catch (const UsageError& e) {
    std::cerr << "ghp: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ghp::ConfigError& e) {
    std::cerr << "ghp: configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const ghp::DataError& e) {
    std::cerr << "ghp: data error: " << e.what() << '\n';
    return kData;
  } catch (const ghp::InputError& e) {
    std::cerr << "ghp: data error: " << e.what() << '\n';
    return kData;
  } catch (const ghp::Error& e) {
    std::cerr << "ghp: domain error: " << e.what() << '\n';
    return kDomain;
  }
}
