#include "vortexq/cli/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vortexq/version.hpp"

namespace vortexq::cli {

const std::vector<KeyInfo>& known_keys() {
  static const std::vector<KeyInfo> keys = {
      {"subcommand", "one of the subcommands (config files only)"},
      {"g", "genus"},
      {"d", "vortex number (divisor degree)"},
      {"k", "level; tau = 4 pi k / volume"},
      {"tau", "coupling constant"},
      {"volume", "area of the surface"},
      {"modulus", "torus modulus as re,im"},
      {"resolution", "grid size N (power of two >= 32)"},
      {"tolerance", "solver or acceptance tolerance"},
      {"points", "vortex positions in lattice coordinates: s,t;s,t;..."},
      {"multiplicities", "vortex multiplicities: n,n,..."},
      {"h1", "Brill-Noether jump h^1"},
      {"moduli_grid", "moduli grid size M (M x M)"},
      {"route", "metric route: deformation, fiberint or both"},
      {"step_fraction", "moduli stencil step as a fraction of the cell diameter"},
      {"t", "zeta evaluation points: t,t,..."},
      {"sweep", "sweep table: dims, metaplectic, obstruction, prequantum or zeta"},
      {"g_max", "largest genus in a sweep"},
      {"d_max", "largest degree in a sweep"},
      {"k_max", "largest level in a sweep"},
      {"im_min", "smallest Im(modulus) in a zeta sweep"},
      {"im_max", "largest Im(modulus) in a zeta sweep"},
      {"samples", "number of moduli in a zeta sweep"},
      {"output", "report path, - for stdout"},
      {"format", "report format: json or csv"},
      {"csv", "extra CSV table path when format = json"},
  };
  return keys;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"solve",       "metric",      "volume", "classes", "dims",
                                                 "metaplectic", "obstruction", "zeta",   "sweep"};
  return names;
}

bool is_known_key(std::string_view key) {
  const auto& keys = known_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const KeyInfo& k) { return k.name == key; });
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> to_real(const std::string& s) {
  double x = 0.0;
  const auto* b = s.data();
  const auto* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::optional<long> to_integer(const std::string& s) {
  long x = 0;
  const auto* b = s.data();
  const auto* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e) return std::nullopt;
  return x;
}

std::string range_text(double lo, double hi, bool open_lo) {
  return std::string(open_lo ? "(" : "[") + format_double(lo) + ", " + format_double(hi) + "]";
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!is_known_key(key)) throw ConfigError(key, "unknown key (line " + std::to_string(lineno) + ")");
    if (out.count(key)) throw ConfigError(key, "given twice (line " + std::to_string(lineno) + ")");
    out[key] = value;
  }
  return out;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"vortexq: abelian vortices on flat tori and the quantization of their moduli spaces"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string sub;
  std::string config_path;
  std::map<std::string, std::string> flags;
  app.add_option("subcommand", sub, "what to compute")->check(CLI::IsMember(subcommands()));
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  for (const auto& key : known_keys()) {
    if (key.name == "subcommand") continue;
    app.add_option_function<std::string>(
        "--" + key.name, [&flags, name = key.name](const std::string& v) { flags[name] = v; }, key.help);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("", e.what());
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    cfg.parameters = parse_config_text(ss.str());
  }
  for (auto& [k, v] : flags) cfg.parameters[k] = v;
  if (auto it = cfg.parameters.find("subcommand"); it != cfg.parameters.end()) {
    if (sub.empty()) sub = it->second;
    cfg.parameters.erase(it);
  }
  if (sub.empty()) throw ConfigError("subcommand", "missing; expected one of solve, metric, volume, ... (see --help)");
  if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end()) {
    throw ConfigError("subcommand", "unknown subcommand '" + sub + "'");
  }
  cfg.subcommand = sub;
  return cfg;
}

// ---------------------------------------------------------------------------

double Params::real(const std::string& key, std::optional<double> fallback, double lo, double hi, bool open_lo) {
  double x = 0.0;
  if (auto it = raw_.find(key); it != raw_.end()) {
    const auto v = to_real(it->second);
    if (!v) fail(key, "not a finite number: '" + it->second + "'");
    x = *v;
  } else if (fallback) {
    x = *fallback;
  } else {
    fail(key, "required");
  }
  if ((open_lo ? !(x > lo) : !(x >= lo)) || !(x <= hi)) {
    fail(key, format_double(x) + " outside " + range_text(lo, hi, open_lo));
  }
  record(key, x);
  return x;
}

long Params::integer(const std::string& key, std::optional<long> fallback, long lo, long hi) {
  long x = 0;
  if (auto it = raw_.find(key); it != raw_.end()) {
    const auto v = to_integer(it->second);
    if (!v) fail(key, "not an integer: '" + it->second + "'");
    x = *v;
  } else if (fallback) {
    x = *fallback;
  } else {
    fail(key, "required");
  }
  if (x < lo || x > hi) fail(key, std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  record(key, x);
  return x;
}

std::string Params::choice(const std::string& key, const std::string& fallback,
                           const std::vector<std::string>& options) {
  const std::string v = has(key) ? raw_.at(key) : fallback;
  if (std::find(options.begin(), options.end(), v) == options.end()) {
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    fail(key, "'" + v + "' is not one of " + list);
  }
  record(key, v);
  return v;
}

std::vector<double> Params::reals(const std::string& key, const std::vector<double>& fallback, double lo, double hi,
                                  bool open_lo) {
  std::vector<double> xs = fallback;
  if (has(key)) {
    xs.clear();
    for (const auto& item : split(raw_.at(key), ',')) {
      const auto v = to_real(item);
      if (!v) fail(key, "not a number list: '" + raw_.at(key) + "'");
      xs.push_back(*v);
    }
  }
  if (xs.empty()) fail(key, "empty list");
  for (double x : xs) {
    if ((open_lo ? !(x > lo) : !(x >= lo)) || !(x <= hi)) {
      fail(key, format_double(x) + " outside " + range_text(lo, hi, open_lo));
    }
  }
  record(key, Json::from(xs));
  return xs;
}

std::vector<long> Params::integers(const std::string& key, const std::vector<long>& fallback, long lo, long hi) {
  std::vector<long> xs = fallback;
  if (has(key)) {
    xs.clear();
    for (const auto& item : split(raw_.at(key), ',')) {
      const auto v = to_integer(item);
      if (!v) fail(key, "not an integer list: '" + raw_.at(key) + "'");
      xs.push_back(*v);
    }
  }
  Json arr = Json::array();
  for (long x : xs) {
    if (x < lo || x > hi) fail(key, std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    arr.push(x);
  }
  record(key, arr);
  return xs;
}

std::vector<std::pair<double, double>> Params::pairs(const std::string& key, double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  Json arr = Json::array();
  for (const auto& item : split(raw_.at(key), ';')) {
    const auto xy = split(item, ',');
    const auto a = xy.size() == 2 ? to_real(xy[0]) : std::nullopt;
    const auto b = xy.size() == 2 ? to_real(xy[1]) : std::nullopt;
    if (!a || !b) fail(key, "expected s,t;s,t;... got '" + raw_.at(key) + "'");
    for (double x : {*a, *b}) {
      if (!(x >= lo) || !(x <= hi)) fail(key, format_double(x) + " outside " + range_text(lo, hi, false));
    }
    out.emplace_back(*a, *b);
    arr.push(Json::from({*a, *b}));
  }
  record(key, arr);
  return out;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  const std::string v = has(key) ? raw_.at(key) : fallback;
  record(key, v);
  return v;
}

}  // namespace vortexq::cli
