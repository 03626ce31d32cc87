// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using conespec::cli::run;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / ("conespec_test_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, VerifyExitCodes) {
  const auto ok = invoke({"verify", "--dim", "7"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const json j = json::parse(ok.out);
  EXPECT_EQ(j.at("command"), "verify");
  EXPECT_TRUE(j.at("result").at("verdict").get<bool>());
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("version"));
  EXPECT_FALSE(j.contains("timestamp"));

  const auto no = invoke({"verify", "--dim", "4"});
  EXPECT_EQ(no.code, 1);
  EXPECT_FALSE(json::parse(no.out).at("result").at("verdict").get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 64);
  EXPECT_EQ(invoke({"verify"}).code, 64);
  EXPECT_EQ(invoke({"verify", "--dim", "seven"}).code, 64);
  EXPECT_EQ(invoke({"frobnicate"}).code, 64);
  EXPECT_EQ(invoke({"verify", "--dim", "2"}).code, 64);
  EXPECT_EQ(invoke({"report", "--dims", "5..3"}).code, 64);
  EXPECT_EQ(invoke({"spectrum", "--dim", "5", "--lambda-max", "1"}).code, 64);
}

TEST(Cli, ConfigHandling) {
  const auto empty = write_temp("empty.json", "");
  EXPECT_EQ(invoke({"--config", empty.string(), "verify", "--dim", "7"}).code, 0);

  const auto coarse = write_temp("coarse.json", R"({"grid_n": 2048})");
  const auto r = invoke({"--config", coarse.string(), "cone", "--dim", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("config").at("grid_n"), 2048);

  const auto bad = write_temp("bad.json", R"({"grid_n": -1})");
  const auto b = invoke({"--config", bad.string(), "cone", "--dim", "5"});
  EXPECT_EQ(b.code, 64);
  EXPECT_NE(b.err.find("grid_n"), std::string::npos);

  const auto unknown = write_temp("unknown.json", R"({"gridn": 64})");
  EXPECT_EQ(invoke({"--config", unknown.string(), "cone", "--dim", "5"}).code, 64);

  const auto broken = write_temp("broken.json", "{\n  \"grid_n\": 64,\n  oops\n}");
  const auto p = invoke({"--config", broken.string(), "cone", "--dim", "5"});
  EXPECT_EQ(p.code, 64);
  EXPECT_NE(p.err.find(":3:"), std::string::npos) << p.err;

  EXPECT_EQ(invoke({"--config", "/nonexistent/conespec.json", "cone", "--dim", "5"}).code, 64);
}

TEST(Cli, ParseConfigReportsPosition) {
  try {
    (void)conespec::cli::parse_config("{\"a\": 1,\n\n   ]");
    FAIL() << "expected ParseError";
  } catch (const conespec::cli::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 4);
  }
  EXPECT_EQ(conespec::cli::parse_config("  \n").grid_n, conespec::SolverConfig{}.grid_n);
}

TEST(Cli, EnvironmentFallback) {
  const auto coarse = write_temp("env.json", R"({"grid_n": 1024})");
  ::setenv("CONESPEC_CONFIG", coarse.string().c_str(), 1);
  const auto r = invoke({"cone", "--dim", "4"});
  ::unsetenv("CONESPEC_CONFIG");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("config").at("grid_n"), 1024);
}

TEST(Cli, TimestampOnlyOnRequest) {
  const auto r = invoke({"--timestamp", "cone", "--dim", "4", "--grid", "512"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).contains("timestamp"));
}

TEST(Cli, DeterministicOutput) {
  const auto a = invoke({"report", "--dims", "3..5"});
  const auto b = invoke({"report", "--dims", "3..5"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# conespec", 0), 0u);
  EXPECT_NE(a.out.find("d,theta0,H,lambda1,stable,kernel0,kernel_d1,gap"), std::string::npos);
}

TEST(Cli, CsvCommands) {
  const auto m = invoke({"modes", "--dim", "5", "--mu-max", "10"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("ell,mu,multiplicity\n0,0,1\n1,3,4\n2,8,9\n"), std::string::npos) << m.out;

  const auto b = invoke({"boundary-spectrum", "--dim", "7", "--count", "4"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find(",odd,"), std::string::npos);
}

TEST(Cli, ParticularAndWeiss) {
  const auto modes = write_temp("modes.json", R"([{"ell": 0, "parity": "odd", "amplitude": 1.0}])");
  const auto cfg = write_temp("small.json", R"({"r_max": 1024})");
  const auto p = invoke({"--config", cfg.string(), "particular", "--dim", "7", "--beta", "0.7", "--modes",
                         modes.string(), "--per-degree", "4"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_LT(json::parse(p.out).at("result").at("boundary_residual").get<double>(), 1e-6);

  const auto badmodes = write_temp("badmodes.json", R"([{"ell": 0, "parity": "sideways", "amplitude": 1.0}])");
  EXPECT_EQ(invoke({"particular", "--dim", "7", "--beta", "0.7", "--modes", badmodes.string()}).code, 64);

  const auto field = write_temp("field.json", R"({"kind": "half_plane"})");
  const auto w = invoke({"weiss", "--dim", "3", "--field", field.string(), "--radii", "0.5,1"});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto W = json::parse(w.out).at("result").at("W");
  EXPECT_NEAR(W[0].get<double>(), W[1].get<double>(), 1e-9);
}

TEST(Cli, OutputFile) {
  const fs::path target = fs::temp_directory_path() / "conespec_test_out.json";
  fs::remove(target);
  const auto r = invoke({"--out", target.string(), "cone", "--dim", "4", "--grid", "512"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(target);
  const json j = json::parse(f);
  EXPECT_EQ(j.at("command"), "cone");
}
