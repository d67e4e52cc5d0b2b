#include <iostream>

#include "vortexq/cli/run.hpp"

namespace vortexq::cli {

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult rr;
  try {
    rr = execute(config);
  } catch (const ConfigError& e) {
    err << "vortexq: config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const std::string body = rr.format == OutputFormat::Json ? rr.report.dump() : rr.table.to_csv();
    if (rr.output == "-") {
      out << body;
      out.flush();
    } else {
      write_atomic(rr.output, body);
    }
    if (!rr.csv_path.empty() && !rr.table.empty()) write_atomic(rr.csv_path, rr.table.to_csv());
  } catch (const std::exception& e) {
    err << "vortexq: " << e.what() << '\n';
    return kExitInternal;
  }
  if (rr.exit_code != kExitOk) {
    if (const Json* e = rr.report.find("error")) {
      const Json* m = e->find("message");
      if (const std::string* s = m ? m->as_string() : nullptr) err << "vortexq: " << *s << '\n';
    }
  }
  return rr.exit_code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_command_line(argc, argv);
    if (!cfg) return kExitOk;
    return run(*cfg, out, err);
  } catch (const ConfigError& e) {
    err << "vortexq: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "vortexq: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace vortexq::cli
