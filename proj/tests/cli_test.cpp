// Golden-file and exit-code tests for the command-line front end, run
// in-process. Set GFUSION_UPDATE_GOLDEN=1 to rewrite the expected reports.

#include "golden_cases.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

namespace gfusion::cli {
namespace {

using namespace golden;

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesExpectedReport) {
  const GoldenCase& c = GetParam();
  if (std::getenv("GFUSION_UPDATE_GOLDEN")) {
    const Outcome o = invoke(c.args);
    const fs::path path = kGolden / "expected" / (c.name + (c.text ? ".txt" : ".json"));
    fs::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << o.out;
    GTEST_SKIP() << "rewrote " << path;
  }
  const auto diffs = check_case(c);
  std::string joined;
  for (const auto& d : diffs) joined += d + "\n";
  EXPECT_TRUE(diffs.empty()) << joined;
}

TEST_P(Golden, IsByteIdenticalAcrossRuns) {
  const GoldenCase& c = GetParam();
  const Outcome a = invoke(c.args);
  const Outcome b = invoke(c.args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(golden_cases()),
                         [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

TEST(Cli, GeneratedFileMatchesCommittedInput) {
  EXPECT_EQ(invoke({"gen", "--dim", "4", "--blocks", "3", "--kind", "frame", "--seed", "1"}).out,
            slurp(kGolden / "inputs" / "frame.json"));
}

TEST(Cli, AnalyzeCoordinateSystem) {
  const json r = json::parse(invoke({"analyze", "@in/coordinate.json"}).out);
  EXPECT_EQ(r["result"]["bounds"]["lower"], 1.0);
  EXPECT_EQ(r["result"]["bounds"]["upper"], 1.0);
  EXPECT_EQ(r["result"]["parseval"], true);
  EXPECT_EQ(r["verdict"], "frame");
  EXPECT_EQ(r["inputs"][0]["file"], "coordinate.json");
  EXPECT_EQ(r["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

// Bounds of the complex example, from an independent eigen-solve of its
// frame operator.
TEST(Cli, AnalyzeComplexExample) {
  const json r = json::parse(invoke({"analyze", "@in/complex.json"}).out);
  EXPECT_NEAR(r["result"]["bounds"]["lower"].get<double>(), 0.32251993390878037, 1e-12);
  EXPECT_NEAR(r["result"]["bounds"]["upper"].get<double>(), 13.177480066091208, 1e-12);
  EXPECT_EQ(r["result"]["field"], "complex");
}

TEST(Cli, AnalysisPerturbationEndToEnd) {
  const Outcome o = invoke({"perturb", "@in/frame.json", "@in/frame_noisy.json", "--theorem", "analysis"});
  ASSERT_EQ(o.code, 0);
  const json r = json::parse(o.out);
  EXPECT_LT(r["result"]["R"].get<double>(), r["result"]["reference"]["lower"].get<double>());
  EXPECT_EQ(r["result"]["bracket_ok"], true);
  EXPECT_EQ(r["result"]["mode"], "exact");
}

TEST(Cli, ShortTheoremNamesNormalize) {
  const std::vector<std::pair<std::string, std::string>> names{
      {"t52", "frame-operator"}, {"cR", "r-condition"}, {"synth", "synthesis"}};
  for (const auto& [brief, full] : names) {
    const Outcome a = invoke({"perturb", "@in/frame.json", "@in/frame_noisy.json", "--theorem", brief});
    const Outcome b = invoke({"perturb", "@in/frame.json", "@in/frame_noisy.json", "--theorem", full});
    EXPECT_EQ(a.code, b.code) << brief;
    EXPECT_EQ(a.out, b.out) << brief;
    EXPECT_EQ(json::parse(a.out)["command"]["options"]["theorem"], full);
  }
}

TEST(Cli, DualOutRoundTrips) {
  const fs::path tmp = fs::temp_directory_path() / "gfusion_cli_test_dual.json";
  const Outcome o = invoke({"dual", "@in/frame.json", "--dual-out", tmp.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string text = slurp(tmp);
  const AnySystem dual = parse_system(text);
  EXPECT_EQ(serialize(dual), text);
  EXPECT_EQ(json::parse(text), json::parse(o.out)["result"]["dual"]);
  fs::remove(tmp);
}

TEST(Cli, OutFileMatchesStdout) {
  const fs::path tmp = fs::temp_directory_path() / "gfusion_cli_test_out.json";
  const Outcome a = invoke({"riesz", "@in/lambda_riesz.json"});
  const Outcome b = invoke({"riesz", "@in/lambda_riesz.json", "--out", tmp.string()});
  EXPECT_EQ(b.code, a.code);
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(slurp(tmp), a.out);
  fs::remove(tmp);
}

TEST(Cli, TolOverridesVerdictTolerance) {
  const json r = json::parse(invoke({"analyze", "@in/frame.json", "--tol", "1e-6"}).out);
  EXPECT_EQ(r["tolerances"]["verdict"], 1e-6);
}

TEST(Cli, SeedChangesRandomizedReports) {
  const Outcome a = invoke({"dual", "@in/frame.json", "--seed", "1", "--samples", "5"});
  const Outcome b = invoke({"dual", "@in/frame.json", "--seed", "2", "--samples", "5"});
  EXPECT_NE(a.out, b.out);
}

struct ErrorCase {
  std::vector<std::string> args;
  std::string needle;
};

TEST(Cli, InputErrorsExitWithTwo) {
  const std::vector<ErrorCase> cases = {
      {{"analyze", "@in/malformed.json"}, "line 7, column 5"},
      {{"analyze", "@in/does_not_exist.json"}, "cannot open"},
      {{"frobnicate"}, ""},
      {{}, ""},
      {{"analyze"}, "system"},
      {{"cross", "@in/frame.json", "@in/frame_noisy.json"}, "gf-orthonormal"},
      {{"cross", "@in/theta.json", "@in/frame.json"}, "different scalar fields"},
      {{"perturb", "@in/frame.json", "@in/coordinate.json", "--theorem", "analysis"}, "differ"},
      {{"perturb", "@in/frame.json", "@in/frame.json", "--theorem", "t99"}, "theorem"},
      {{"perturb", "@in/rank_deficient.json", "@in/rank_deficient.json", "--theorem", "analysis"},
       "not a frame"},
      {{"gen", "--dim", "3", "--blocks", "4", "--kind", "onb"}, "J ≤ n"},
      {{"gen", "--dim", "3"}, "--blocks"},
      {{"gen", "--dim", "3", "--blocks", "2", "--kind", "tight"}, "kind"},
      {{"gen", "--over", "@in/frame.json"}, "gf-orthonormal"},
      {{"analyze", "@in/frame.json", "--tol", "-1"}, "tol"},
  };
  for (const auto& c : cases) {
    const Outcome o = invoke(c.args);
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    EXPECT_EQ(o.code, 2) << joined;
    EXPECT_TRUE(o.out.empty()) << joined;
    EXPECT_NE(o.err.find(c.needle), std::string::npos) << joined << "\n" << o.err;
  }
}

TEST(Cli, HelpExitsWithZero) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("perturb"), std::string::npos);
  const Outcome sub = invoke({"perturb", "--help"});
  EXPECT_EQ(sub.code, 0);
  EXPECT_NE(sub.out.find("--theorem"), std::string::npos);
}

}  // namespace
}  // namespace gfusion::cli
