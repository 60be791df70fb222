#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "morrey/errors.hpp"
#include "morrey_cli/cli.hpp"

using namespace morrey;
using namespace morrey::cli;
using nlohmann::json;

namespace {

std::string write_config(const std::string& name, const json& j) {
  const auto dir = std::filesystem::temp_directory_path() / "morrey_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << j.dump();
  return path.string();
}

json main01() {
  return {{"n", 1}, {"p1", 2}, {"p2", 1}, {"th1", 2}, {"th2", 1}, {"omega1", "t^-0.25"}, {"omega2", "exp(-t)"}};
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args, const EstimatorFn& est = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err, est);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Config, ParsesNumbersAndStrings) {
  json j = main01();
  j["th1"] = "2";
  j["rel_tol"] = 1e-6;
  j["oracle"] = {{"restarts", 2}, {"breakpoint_span", {0.01, 100}}};
  const ProblemConfig c = ProblemConfig::from_json(j);
  EXPECT_EQ(c.p1, "2");
  EXPECT_EQ(c.th1, "2");
  EXPECT_EQ(c.quadrature.rel_tol, 1e-6);
  EXPECT_EQ(c.oracle.restarts, 2);
  EXPECT_EQ(c.oracle.span_lo, 0.01);
  const ProblemConfig d = ProblemConfig::from_json(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
  json missing = main01();
  missing.erase("p2");
  EXPECT_THROW(ProblemConfig::from_json(missing), Error);
}

TEST(Cli, EstimateMain01Json) {
  const auto r = call({"estimate", "--config", write_config("m01.json", main01()), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("regime"), "Main01");
  EXPECT_NEAR(j.at("value").get<double>(), std::pow(M_PI / 2, 0.25), 1e-6);
  for (const char* key : {"terms", "checks", "oracle", "warnings", "explanation", "hypotheses_verified"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j.at("oracle").at("lower_bound").is_null());
}

TEST(Cli, EstimateWithOracle) {
  json cfg = main01();
  cfg["oracle"] = {{"restarts", 1}, {"refine_levels", 1}};
  const auto r = call({"estimate", "--config", write_config("m01o.json", cfg), "--json", "--oracle-budget", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_GT(j.at("oracle").at("lower_bound").get<double>(), 0.0);
  EXPECT_EQ(j.at("oracle").at("budget").at("ascent_iters"), 20);
}

TEST(Cli, ShortestRoundTripNumbers) {
  const auto r = call({"estimate", "--config", write_config("m01.json", main01())});
  ASSERT_EQ(r.code, 0);
  const auto pos = r.out.find("value: ");
  ASSERT_NE(pos, std::string::npos);
  const std::string v = r.out.substr(pos + 7, r.out.find('\n', pos) - pos - 7);
  EXPECT_EQ(format_double(std::stod(v)), v);
}

TEST(Cli, NotEmbeddedExitsTwo) {
  json j = main01();
  j["p1"] = 1;
  j["p2"] = 2;
  const auto r = call({"estimate", "--config", write_config("ne.json", j), "--json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out).at("regime"), "NotEmbedded");
}

TEST(Cli, OpenCaseVerifyExitsTwo) {
  json j = main01();
  j["p2"] = 2;
  j["p1"] = 2;
  j["th2"] = 1;
  const auto r = call({"verify", "--config", write_config("open.json", j)});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("OpenCase"), std::string::npos);
  EXPECT_NE(r.out.find("explanation"), std::string::npos);
}

TEST(Cli, MalformedExpressionExitsOne) {
  json j = main01();
  j["omega1"] = "t^-0.25*(";
  const auto r = call({"estimate", "--config", write_config("bad.json", j)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("position"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"estimate"}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"estimate", "--config", "/no/such/file.json"}).code, 1);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, HypothesisFailureAndForce) {
  json j = main01();
  j["th2"] = 3;
  j["omega2"] = "chi(0,1)";
  const std::string path = write_config("hyp.json", j);
  EXPECT_EQ(call({"estimate", "--config", path}).code, 1);
  const auto r = call({"estimate", "--config", path, "--force", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out).at("hypotheses_verified").get<bool>());
}

TEST(Cli, Classify) {
  const auto r = call({"classify", "--config", write_config("m01.json", main01())});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Main01\n");
}

TEST(Cli, VerifyPassesAndCorruptedEstimatorFails) {
  json j = main01();
  j["oracle"] = {{"restarts", 1}, {"ascent_iters", 40}, {"refine_levels", 1}};
  const std::string path = write_config("ver.json", j);
  const auto ok = call({"verify", "--config", path, "--json"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(json::parse(ok.out).at("status"), "PASS");
  EstimatorFn corrupt = [](const RadialProblem& p, const QuadratureConfig& c, const EstimateOptions& o) {
    EstimateReport r = estimate(p, c, o);
    *r.value *= 1e-3;
    return r;
  };
  const auto bad = call({"verify", "--config", path, "--json"}, corrupt);
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.out).at("status"), "FAIL");
}

TEST(Cli, SweepAcrossRegimeBoundary) {
  json j = main01();
  j["th2"] = 3;
  const auto r = call({"sweep", "--config", write_config("sw.json", j), "--axis", "p1", "--from", "0.5", "--to",
                       "3", "--steps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, csv_header());
  std::vector<std::string> regimes;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cols.push_back(c);
    ASSERT_GE(cols.size(), 2u);
    regimes.push_back(cols[1]);
    EXPECT_EQ(line.find("nan"), std::string::npos);
  }
  ASSERT_EQ(regimes.size(), 6u);
  EXPECT_EQ(regimes[0], "NotEmbedded");
  int changes = 0;
  for (std::size_t i = 1; i < regimes.size(); ++i) changes += regimes[i] != regimes[i - 1];
  EXPECT_GE(changes, 1);
}

TEST(Cli, SweepHomogeneityAndSinglePoint) {
  const auto rows = sweep(ProblemConfig::from_json(main01()), "omega2_scale", 1, 4, 3, false, nullptr);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.estimate.has_value()) << r.error;
    EXPECT_NEAR(*r.estimate / r.axis_value, *rows[0].estimate, 1e-9);
  }
  EXPECT_EQ(sweep(ProblemConfig::from_json(main01()), "th2", 2, 7, 0, false, nullptr).size(), 1u);
  EXPECT_THROW(sweep(ProblemConfig::from_json(main01()), "nope", 0, 1, 1, false, nullptr), Error);
}

TEST(Cli, SweepErrorsGoToErrorColumn) {
  json j = main01();
  j["th2"] = 3;
  j["omega2"] = "chi(0,1)";
  const auto rows = sweep(ProblemConfig::from_json(j), "th2", 3, 4, 1, false, nullptr);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.error.empty());
    EXPECT_FALSE(r.estimate.has_value());
    EXPECT_EQ(csv_row(r).find("nan"), std::string::npos);
  }
}
