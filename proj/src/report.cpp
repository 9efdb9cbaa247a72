#include "ghp/report.hpp"

#include <sstream>

#include "ghp/error.hpp"
#include "ghp/format.hpp"

namespace ghp {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i];
  }
  return out;
}

void line(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << key << " = " << value << "\n";
}

void line(std::ostringstream& out, const std::string& key, double value) {
  line(out, key, format_number(value));
}

}  // namespace

std::string serialize(const MonteCarloReport& report) {
  std::ostringstream out;
  out << "# generalized Hill process Monte Carlo report\n";
  line(out, "ks_vs_normal", report.ks_vs_normal);
  if (report.ks_vs_limit_law) line(out, "ks_vs_limit_law", *report.ks_vs_limit_law);
  if (report.ks_vs_exp1) line(out, "ks_vs_exp1", *report.ks_vs_exp1);

  out << "\n[config]\n";
  line(out, "model", report.model);
  line(out, "f_list", join(report.f_list));
  line(out, "n", std::to_string(report.n));
  line(out, "k", std::to_string(report.k));
  line(out, "R", std::to_string(report.R));
  line(out, "seed", std::to_string(report.seed));
  line(out, "scale_mode", to_string(report.scale_mode));
  line(out, "domain", report.domain);

  for (std::size_t i = 0; i < report.summaries.size(); ++i) {
    const auto& s = report.summaries[i];
    out << "\n[summaries." << i << "]\n";
    line(out, "f", s.f);
    line(out, "mean", s.mean);
    line(out, "variance", s.variance);
    line(out, "skewness", s.skewness);
    line(out, "ks_vs_normal", s.ks_vs_normal);
    if (s.ks_vs_limit_law) line(out, "ks_vs_limit_law", *s.ks_vs_limit_law);
    if (s.limit_mean) line(out, "limit_mean", *s.limit_mean);
    if (s.limit_variance) line(out, "limit_variance", *s.limit_variance);
    if (s.limit_skewness) line(out, "limit_skewness", *s.limit_skewness);
  }

  if (report.empirical_corr) {
    out << "\n[empirical_corr]\n";
    const std::size_t s = report.f_list.size();
    for (std::size_t a = 0; a < s; ++a) {
      std::string row;
      for (std::size_t b = 0; b < s; ++b) {
        if (b > 0) row += " ";
        row += format_number((*report.empirical_corr)[a * s + b]);
      }
      line(out, std::to_string(a), row);
    }
  }

  if (report.rho_trace) {
    out << "\n[rho_trace]\n";
    for (std::size_t i = 0; i < report.rho_trace->size(); ++i) {
      const auto& p = (*report.rho_trace)[i];
      line(out, std::to_string(i),
           std::to_string(p.k) + " " + format_number(p.rho_sq) + " " + format_number(p.limit));
    }
  }
  return out.str();
}

ReportDocument parse_report(const std::string& text) {
  ReportDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    const auto last = raw.find_last_not_of(" \t\r");
    const std::string content = raw.substr(first, last - first + 1);
    if (content.front() == '[') {
      if (content.back() != ']') {
        throw InputError("report line " + std::to_string(line_no) + ": unterminated section");
      }
      section = content.substr(1, content.size() - 2);
      doc[section];
      continue;
    }
    const auto eq = content.find(" = ");
    if (eq == std::string::npos) {
      throw InputError("report line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    doc[section][content.substr(0, eq)] = content.substr(eq + 3);
  }
  return doc;
}

}  // namespace ghp
