#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vortexq/cli/run.hpp"
#include "vortexq/version.hpp"

using namespace vortexq::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vortexq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vortexq_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("parse_config_text: format and rejection") {
  const auto p = parse_config_text("\xEF\xBB\xBF# coupling\n  tau = 25.1327  # 8 pi\n\nvolume=1\nmodulus = 0,1\n");
  CHECK(p.size() == 3);
  CHECK(p.at("tau") == "25.1327");
  CHECK(p.at("volume") == "1");
  CHECK(p.at("modulus") == "0,1");

  const auto key_of = [](std::string_view text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("colour = blue\n") == "colour");
  CHECK(key_of("tau = 1\ntau = 2\n") == "tau");
  CHECK(key_of("tau 1\n") != "<none>");
}

TEST_CASE("run: documented examples and exit codes") {
  const auto solve = invoke({"solve", "--tau", "25.1327", "--volume", "1", "--d", "1", "--resolution", "64"});
  CHECK(solve.code == kExitOk);
  CHECK(contains(solve.out, "\"status\": \"ok\""));
  CHECK(contains(solve.out, "\"flux\": 6.28318530717"));

  const auto dims = invoke({"dims", "--g", "2", "--d", "2", "--k", "3"});
  CHECK(dims.code == kExitOk);
  CHECK(contains(dims.out, "\"dim\": 3,"));

  const auto gate = invoke({"dims", "--g", "2", "--d", "2", "--k", "2"});
  CHECK(gate.code == kExitDomain);
  CHECK(contains(gate.out, "\"kind\": \"BradlowViolation\""));
  CHECK(contains(gate.err, "BradlowViolation"));

  for (const char* tau : {"12.566370614359172", "12.556370614359172"}) {
    const auto r = invoke({"solve", "--tau", tau, "--volume", "1", "--d", "1", "--resolution", "32"});
    CHECK(r.code == kExitDomain);
    CHECK(contains(r.out, "BradlowViolation"));
  }

  CHECK(invoke({"obstruction", "--g", "1", "--k", "3", "--d", "2"}).code == kExitDomain);
  CHECK(invoke({"classes", "--g", "1", "--d", "1", "--tau", "6.283185307179586", "--volume", "1"}).code ==
        kExitDomain);
}

TEST_CASE("run: configuration errors name the key and exit 3") {
  const auto unknown = invoke({"dims", "--colour", "blue"});
  CHECK(unknown.code == kExitConfig);
  CHECK(unknown.out.empty());

  const auto range = invoke({"solve", "--tau", "25.1327", "--resolution", "48"});
  CHECK(range.code == kExitConfig);
  CHECK(contains(range.err, "resolution"));

  const auto bad = invoke({"solve", "--tau", "abc"});
  CHECK(bad.code == kExitConfig);
  CHECK(contains(bad.err, "tau"));

  CHECK(invoke({"bogus"}).code == kExitConfig);
  CHECK(invoke({"dims", "--config", "/nonexistent/vortexq.cfg"}).code == kExitConfig);
  CHECK(invoke({"solve", "--volume", "-1", "--tau", "25"}).code == kExitConfig);
}

TEST_CASE("run: reports embed the version and the resolved configuration") {
  const auto r = invoke({"metaplectic", "--g", "3", "--d", "4"});
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, std::string("\"version\": \"") + vortexq::kVersion + "\""));
  CHECK(contains(r.out, "\"subcommand\": \"metaplectic\""));
  CHECK(contains(r.out, "\"g\": 3"));
  CHECK(contains(r.out, "\"d\": 4"));
}

TEST_CASE("run: flags override the config file") {
  const auto dir = scratch_dir("override");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "subcommand = dims\ng = 2\nd = 2\nk = 2\n";
  }
  const auto from_file = invoke({"--config", (dir / "run.cfg").string()});
  CHECK(from_file.code == kExitDomain);
  const auto overridden = invoke({"--config", (dir / "run.cfg").string(), "--k", "5"});
  CHECK(overridden.code == kExitOk);
  CHECK(contains(overridden.out, "\"dim\": 10,"));
  fs::remove_all(dir);
}

TEST_CASE("run: identical configurations give byte-identical reports") {
  const auto dir = scratch_dir("determinism");
  const std::vector<std::vector<std::string>> cases = {
      {"solve", "--tau", "25.1327", "--volume", "1", "--d", "1", "--resolution", "64"},
      {"zeta", "--modulus", "0.2,1.3", "--volume", "2"},
      {"sweep", "--sweep", "metaplectic", "--g_max", "4", "--d_max", "4"},
  };
  int n = 0;
  for (auto args : cases) {
    const auto a = dir / ("a" + std::to_string(n) + ".json");
    const auto b = dir / ("b" + std::to_string(n) + ".json");
    auto with = [&](const fs::path& p) {
      auto v = args;
      v.insert(v.end(), {"--output", p.string()});
      return v;
    };
    REQUIRE(invoke(with(a)).code == kExitOk);
    REQUIRE(invoke(with(b)).code == kExitOk);
    const std::string ja = slurp(a);
    CHECK(!ja.empty());
    CHECK(ja == slurp(b));
    CHECK(ja == invoke(args).out);
    ++n;
  }
  fs::remove_all(dir);
}

TEST_CASE("run: CSV output") {
  const auto r = invoke({"dims", "--g", "2", "--d", "2", "--k", "3", "--format", "csv"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 4);
  CHECK(all[0].rfind("# ", 0) == 0);
  CHECK(all[1].rfind("# config ", 0) == 0);
  CHECK(all[2] == "g,d,k,h1,h0,dim,generic_dim,jumped");
  CHECK(all[3] == "2,2,3,0,3,3,3,false");

  const auto dir = scratch_dir("csv");
  const auto json = invoke({"sweep", "--sweep", "dims", "--g_max", "2", "--k_max", "4", "--output",
                            (dir / "r.json").string(), "--csv", (dir / "r.csv").string()});
  CHECK(json.code == kExitOk);
  CHECK(fs::exists(dir / "r.json"));
  CHECK(slurp(dir / "r.csv").rfind("# ", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("write_atomic: replaces the target and leaves no temporaries") {
  const auto dir = scratch_dir("atomic");
  const auto path = dir / "report.json";
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  CHECK(slurp(path) == "second\n");
  long entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS(write_atomic(dir / "missing" / "x.json", "x"));
  fs::remove_all(dir);
}
