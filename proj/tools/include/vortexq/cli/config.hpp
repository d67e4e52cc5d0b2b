#pragma once

// Run configuration: flat key = value parameters from a config file and/or
// command-line flags (flags win), validated and range-checked before any
// computation starts.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vortexq/cli/json.hpp"

namespace vortexq::cli {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitDomain = 2, kExitConfig = 3 };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : "'" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
};

struct KeyInfo {
  std::string name;
  std::string help;
};

const std::vector<KeyInfo>& known_keys();
const std::vector<std::string>& subcommands();
bool is_known_key(std::string_view key);

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, missing
/// '=' and duplicate keys are ConfigErrors naming the key (or line).
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// argv[1..]: optional subcommand, then --key value / --key=value flags and
/// --config FILE. Returns nullopt after printing help or version.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv);

/// Typed, range-checked access to the raw parameters. Every lookup is
/// recorded so the resolved configuration can be embedded in the report.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }
  double real(const std::string& key, std::optional<double> fallback, double lo, double hi, bool open_lo = false);
  long integer(const std::string& key, std::optional<long> fallback, long lo, long hi);
  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& options);
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback, double lo, double hi,
                            bool open_lo = false);
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback, long lo, long hi);
  /// "x,y;x,y;..." pairs.
  std::vector<std::pair<double, double>> pairs(const std::string& key, double lo, double hi);
  std::string text(const std::string& key, const std::string& fallback);

  /// Records a derived default that has no single raw value.
  void note(const std::string& key, Json value) { record(key, std::move(value)); }
  [[noreturn]] void fail(const std::string& key, const std::string& what) const { throw ConfigError(key, what); }
  Json resolved() const { return resolved_; }

 private:
  void record(const std::string& key, Json value) { resolved_.set(key, std::move(value)); }
  const std::map<std::string, std::string>& raw_;
  Json resolved_ = Json::object();
};

}  // namespace vortexq::cli
