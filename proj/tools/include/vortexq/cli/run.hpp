#pragma once

#include <iosfwd>

#include "vortexq/cli/config.hpp"
#include "vortexq/cli/json.hpp"

namespace vortexq::cli {

struct RunResult {
  int exit_code = kExitOk;
  Json report;  ///< header + result or error
  Table table;  ///< plot-ready rows; may be empty on error
  OutputFormat format = OutputFormat::Json;
  std::string output;  ///< "-" for stdout
  std::string csv_path;
};

/// Validates the parameters, dispatches, and builds the report. Throws
/// ConfigError before any computation; library errors become reports with
/// exit code 2 (domain) or 1 (internal).
RunResult execute(const RunConfig& config);

/// execute() plus emission. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vortexq::cli
