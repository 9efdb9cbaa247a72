#pragma once

#include <map>
#include <string>

#include "ghp/diagnostics.hpp"

namespace ghp {

/// Flat structured text: top-level `key = value` lines, then `[section]`
/// blocks. Field names follow MonteCarloReport; the config echo lives in
/// [config], per-weight summaries in [summaries.<i>], correlation rows in
/// [empirical_corr] and the trace in [rho_trace].
std::string serialize(const MonteCarloReport& report);

/// Section name ("" for top level) -> key -> raw value.
using ReportDocument = std::map<std::string, std::map<std::string, std::string>>;

ReportDocument parse_report(const std::string& text);

}  // namespace ghp
