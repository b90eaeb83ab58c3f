#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "diracsol/commands.hpp"
#include "diracsol/config.hpp"
#include "diracsol/profile.hpp"

using namespace diracsol;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("diracsol_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "run.json";
  std::ofstream(p) << j.dump();
  return p.string();
}

int run(const std::string& cmd, const std::string& config, const fs::path& out,
        std::string* stdout_text = nullptr, const std::string& format = "",
        const std::string& profile = "") {
  CommandOptions o;
  o.config_path = config;
  o.out_dir = out.string();
  o.format = format;
  o.profile_path = profile;
  std::ostringstream so, se;
  const int code = run_command(cmd, o, so, se);
  if (stdout_text) *stdout_text = so.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const json kDirac = {{"model",
                      {{"equation", "dirac3d"},
                       {"omega", 0.9},
                       {"mass", 1.0},
                       {"nonlinearity", {{"kind", "soler"}, {"lambda", 1.0}}},
                       {"family", 1}}}};

}  // namespace

TEST_CASE("strict schema") {
  CHECK_NOTHROW(parse_config(kDirac));
  json j = kDirac;
  j["model"]["omgea"] = 0.5;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = kDirac;
  j["extra"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = kDirac;
  j["model"]["omega"] = 1.2;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = kDirac;
  j["model"]["omega"] = "0.9";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = kDirac;
  j["experiment"]["velocities"] = json::array({json::array({0.6, 0.8, 0.0})});
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j = kDirac;
  j["model"]["nonlinearity"]["kind"] = "cubic";
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("resolved config round-trips") {
  const RunConfig c = parse_config(kDirac);
  const json a = to_json(c);
  CHECK(to_json(parse_config(a)) == a);
}

TEST_CASE("solve, verify and corrupted verify") {
  const fs::path d = scratch_dir("verify");
  const std::string cfg = write_config(d, kDirac);
  std::string text;
  CHECK(run("solve", cfg, d / "out", &text) == kExitPass);
  CHECK(text.find("pass = true") != std::string::npos);
  CHECK(text.find("# config {") == 0);
  CHECK(fs::exists(d / "out" / "profile.txt"));
  CHECK(run("verify", cfg, d / "out") == kExitPass);

  const RadialProfile p = load_profile((d / "out" / "profile.txt").string());
  save_profile((d / "bad.txt").string(), p.with_scaled_u(1.05));
  CHECK(run("verify", cfg, d / "bad", &text, "structured", (d / "bad.txt").string()) ==
        kExitIdentity);
  const json r = json::parse(text);
  CHECK(r["pass"] == false);
  CHECK(r["meta"]["config"]["model"]["omega"] == 0.9);
}

TEST_CASE("config errors exit with code 2 and an error object") {
  const fs::path d = scratch_dir("errors");
  json j = kDirac;
  j["model"]["omega"] = 1.2;
  std::string text;
  CHECK(run("solve", write_config(d, j), d / "out", &text, "structured") == kExitConfig);
  CHECK(json::parse(text)["error"]["type"] == "config");
  CHECK(run("solve", (d / "missing.json").string(), d / "out") == kExitConfig);
  CHECK(run("kgd-solve", write_config(d, kDirac), d / "out") == kExitConfig);
}

TEST_CASE("profile of the wrong kind is refused") {
  const fs::path d = scratch_dir("kind");
  const std::string cfg = write_config(d, kDirac);
  REQUIRE(run("solve", cfg, d / "out") == kExitPass);
  json j = kDirac;
  j["model"]["equation"] = "dirac1d";
  CHECK(run("verify", write_config(d, j), d / "out") == kExitConfig);
}

TEST_CASE("empty velocity list") {
  const fs::path d = scratch_dir("empty");
  json j = kDirac;
  j["experiment"]["velocities"] = json::array();
  const std::string cfg = write_config(d, j);
  REQUIRE(run("solve", cfg, d / "out") == kExitPass);
  std::string text;
  CHECK(run("boost", cfg, d / "out", &text, "structured") == kExitPass);
  CHECK(json::parse(text)["rows"].empty());
}

TEST_CASE("reports are deterministic") {
  const fs::path d = scratch_dir("determinism");
  const std::string cfg = write_config(d, kDirac);
  std::string a, b;
  REQUIRE(run("solve", cfg, d / "a", &a) == kExitPass);
  REQUIRE(run("solve", cfg, d / "b", &b) == kExitPass);
  CHECK(slurp(d / "a" / "profile.txt") == slurp(d / "b" / "profile.txt"));
  // Reports differ only in the embedded output directory.
  json ja = json::parse(slurp(d / "a" / "solve.txt").substr(9, a.find('\n') - 9));
  CHECK(ja["output"]["directory"] == (d / "a").string());
  CHECK(a.substr(a.find('\n')) == b.substr(b.find('\n')));
}

TEST_CASE("decoupled KGD run reproduces the Dirac profile") {
  const fs::path d = scratch_dir("decoupled");
  REQUIRE(run("solve", write_config(d, kDirac), d / "dirac") == kExitPass);
  json j = kDirac;
  j["model"]["equation"] = "kgd";
  j["model"]["eta"] = 0.0;
  j["model"]["M"] = 1.0;
  REQUIRE(run("kgd-solve", write_config(d, j), d / "kgd") == kExitPass);
  const RadialProfile a = load_profile((d / "dirac" / "profile.txt").string());
  const RadialProfile b = load_profile((d / "kgd" / "profile.txt").string());
  REQUIRE(a.points() == b.points());
  double diff = 0;
  for (int i = 0; i < a.points(); ++i) {
    diff = std::max({diff, std::abs(a.u()[i] - b.u()[i]), std::abs(a.v()[i] - b.v()[i])});
  }
  CHECK(diff <= 1e-12);
}
