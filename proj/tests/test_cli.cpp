#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hierflow/cli.hpp"
#include "hierflow/config.hpp"
#include "hierflow/errors.hpp"

using namespace hierflow;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hierflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hierflow_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, BetaKondoJson) {
  const auto r = run({"beta", "kondo"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["model"], "kondo");
  EXPECT_EQ(j["denominator"].size(), 3u);
  EXPECT_EQ(j["components"]["l0"][1]["terms"].size(), 3u);
  EXPECT_NE(r.err.find("l0=3 l1=2 total=5"), std::string::npos);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys.front(), "model");
}

TEST(Cli, BetaWritesFileAndPrintsCounts) {
  const auto path = (std::filesystem::temp_directory_path() / "hierflow_test_beta.json").string();
  const auto r = run({"beta", "graphene", "-o", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("term counts:"), std::string::npos);
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::ordered_json::parse(in)["dimension"], 7);
}

TEST(Cli, UnknownModelIsUsageError) {
  const auto r = run({"beta", "nosuch"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nosuch"), std::string::npos);
  EXPECT_EQ(run({"fixed-points", "nosuch"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "nothing"}).code, 2);
}

TEST(Cli, FlowCsv) {
  const auto r = run({"flow", "--model", "kondo", "--couplings", "-0.01,0", "--steps", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "h,l0,l1");
  EXPECT_EQ(ls[1], "0,-0.01,0");
  EXPECT_EQ(ls.back().rfind("# termination=converged", 0), 0u);
  double h, l0, l1;
  ASSERT_EQ(std::sscanf(ls[ls.size() - 2].c_str(), "%lf,%lf,%lf", &h, &l0, &l1), 3);
  EXPECT_NEAR(l0, -0.78073, 1e-5);
  EXPECT_NEAR(l1, 0.052929, 1e-6);
}

TEST(Cli, FlowFloatsRoundTrip) {
  const auto r = run({"flow", "--model", "kondo", "--couplings", "0.1,0.2", "--steps", "1"});
  ASSERT_EQ(r.code, 0);
  double h, l0, l1;
  ASSERT_EQ(std::sscanf(lines(r.out)[2].c_str(), "%lf,%lf,%lf", &h, &l0, &l1), 3);
  const double c = 1 + 1.5 * 0.01 + 9 * 0.04;
  EXPECT_EQ(l0, (0.1 + 3 * 0.1 * 0.2 - 0.01) / c);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  const auto cfg = temp_file("flow.cfg", "# kondo run\nmodel = kondo\ncouplings = 0.5, 0.5\nsteps = 3\n");
  const auto a = run({"flow", "-c", cfg});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(lines(a.out)[1], "0,0.5,0.5");
  EXPECT_EQ(lines(a.out).size(), 6u);
  const auto b = run({"flow", "-c", cfg, "--couplings", "0.25,0", "--steps", "1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(lines(b.out)[1], "0,0.25,0");
  EXPECT_EQ(lines(b.out).size(), 4u);
}

TEST(Cli, MalformedConfigReportsLine) {
  const auto cfg = temp_file("bad.cfg", "model = kondo\n\ncouplings = 0.1, zebra\n");
  const auto r = run({"flow", "-c", cfg});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_NE(r.err.find("couplings"), std::string::npos);
  EXPECT_EQ(run({"flow", "--model", "kondo", "--couplings", "1,2,3"}).code, 3);
  EXPECT_EQ(run({"flow", "--model", "kondo"}).code, 3);
  EXPECT_EQ(run({"flow", "-c", "/nonexistent/x.cfg"}).code, 3);
  EXPECT_EQ(run({"vector-field", "kondo", "--resolution", "1"}).code, 3);
}

TEST(Cli, FixedPointsKondo) {
  const auto r = run({"fixed-points", "kondo"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_EQ(j["fixed_points"].size(), 2u);
  EXPECT_EQ(j["fixed_points"][0]["classification"], "stable");
  EXPECT_EQ(j["fixed_points"][1]["classification"], "marginal-mixed");
  EXPECT_EQ(j["fixed_points"][1]["moduli"][0], 1.0);
}

TEST(Cli, VectorFieldCsv) {
  const auto r = run({"vector-field", "graphene", "--axes", "0,1", "--resolution", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "li,lj,dir_i,dir_j,log10_mag");
  EXPECT_EQ(ls.size(), 26u);
  EXPECT_EQ(ls[1].rfind("-0.5,-0.5,", 0), 0u);
}

TEST(Cli, VerifyPasses) {
  const auto r = run({"verify", "grassmann"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::ordered_json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, LatticeGrid) {
  const auto r = run({"lattice", "--resolution", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 17u);
  EXPECT_EQ(run({"lattice", "--kx-range", "1,0"}).code, 3);
}

TEST(Cli, ThreadEnvironmentVariable) {
  ::setenv(kThreadsEnv, "zero", 1);
  EXPECT_EQ(run({"lattice", "--resolution", "2"}).code, 3);
  ::setenv(kThreadsEnv, "1", 1);
  EXPECT_EQ(run({"lattice", "--resolution", "2"}).code, 0);
  ::unsetenv(kThreadsEnv);
}

TEST(Config, ParserDiagnostics) {
  std::istringstream ok("model = kondo # trailing\n\n steps=4\n");
  const auto m = parse_config(ok);
  EXPECT_EQ(m.at("model").text, "kondo");
  EXPECT_EQ(m.at("steps").line, 3);
  std::istringstream dup("steps = 1\nsteps = 2\n");
  try {
    parse_config(dup);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line, 2);
  }
  std::istringstream unknown("colour = red\n");
  EXPECT_THROW(parse_config(unknown), ConfigError);
}
