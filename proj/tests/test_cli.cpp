#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

#include "ptalg/cli.hpp"
#include "ptalg/lee_model.hpp"

namespace ptalg::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

TEST(ParseComplexTest, Forms) {
  EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
  EXPECT_EQ(parse_complex("-1.5-0.25i"), Complex(-1.5, -0.25));
  EXPECT_EQ(parse_complex("3"), Complex(3, 0));
  EXPECT_EQ(parse_complex("-2i"), Complex(0, -2));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("1e-3+2e+1i"), Complex(1e-3, 20));
  EXPECT_EQ(parse_complex("2-i"), Complex(2, -1));
  EXPECT_THROW(parse_complex(""), ParameterError);
  EXPECT_THROW(parse_complex("1+2j"), ParameterError);
  EXPECT_THROW(parse_complex("abc"), ParameterError);
}

TEST(ParseArgsTest, TypedParameters) {
  const auto cfg = parse_args({"rep4", "--family", "rep4-12", "--a", "1+2i", "--tol", "1e-8", "--format", "csv"});
  EXPECT_EQ(cfg.command, Command::Rep4);
  EXPECT_EQ(cfg.format, OutputFormat::Csv);
  EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-8);
  EXPECT_EQ(std::get<Complex>(cfg.parameters.at("a")), Complex(1, 2));
  EXPECT_EQ(std::get<std::string>(cfg.parameters.at("family")), "rep4-12");

  const auto lee = parse_args({"lee-spectrum", "--nmax", "16", "--g", "0.25"});
  EXPECT_EQ(std::get<long long>(lee.parameters.at("nmax")), 16);
  EXPECT_DOUBLE_EQ(std::get<double>(lee.parameters.at("g")), 0.25);
  EXPECT_DOUBLE_EQ(lee.tolerance, 1e-10);
}

TEST(RunTest, VerifyRep2) {
  const auto o = invoke({"verify", "--family", "rep2", "--trials", "1000", "--seed", "7"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j.contains("parameters"));
  EXPECT_TRUE(j.contains("results"));
  ASSERT_TRUE(j["residuals"].contains("{eta,eta^PT}=-4a^2"));
  for (const auto& [name, value] : j["residuals"].items()) EXPECT_LE(value.get<double>(), 1e-10) << name;
}

TEST(RunTest, VerifyAllFamiliesPass) {
  for (const std::string family : {"rep4-12", "rep4-block"}) {
    const auto o = invoke({"verify", "--family", family, "--trials", "300", "--seed", "3"});
    EXPECT_EQ(o.code, kExitOk) << family << o.err;
    EXPECT_TRUE(parse(o)["pass"].get<bool>());
  }
}

TEST(RunTest, FailedResidualForcesExitOne) {
  const auto o = invoke({"verify", "--family", "rep4-block", "--trials", "50", "--tol", "1e-30"});
  EXPECT_EQ(o.code, kExitCheckFailed);
  const auto j = parse(o);
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(RunTest, Determinism) {
  const std::vector<std::string> args{"verify", "--family", "rep4-block", "--trials", "100", "--seed", "11"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  const auto other = invoke({"verify", "--family", "rep4-block", "--trials", "100", "--seed", "12"});
  EXPECT_NE(invoke(args).out, other.out);
}

TEST(RunTest, LeeSpectrumCsv) {
  const auto o = invoke({"lee-spectrum", "--m", "1", "--M", "1", "--g", "0.5", "--nmax", "64", "--format", "csv"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 34u);
  EXPECT_EQ(rows[0], "N,truncated,exact,abs_err");
  EXPECT_EQ(rows[1].substr(0, 2), "0,");
  EXPECT_NE(rows[1].find(",0.75,"), std::string::npos);
}

TEST(RunTest, LeeCoeffsBothRoutes) {
  const auto o = invoke({"lee-coeffs", "--m", "1", "--M", "1", "--g", "0.5", "--N", "0", "--terms", "20", "--route", "both"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  const auto j = parse(o);
  ASSERT_EQ(j["results"]["recursion"].size(), 20u);
  ASSERT_EQ(j["results"]["genfunc"].size(), 20u);
  EXPECT_LE(j["results"]["max_rel_diff"].get<double>(), 1e-9);
  EXPECT_EQ(j["results"]["recursion_balance"], "normalizable");
  EXPECT_DOUBLE_EQ(j["results"]["recursion"][1].get<double>(), -0.5);
}

TEST(RunTest, LeeCoeffsExplicitEnergy) {
  const auto o = invoke({"lee-coeffs", "--route", "recursion", "--E", "1.05", "--terms", "24"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(parse(o)["results"]["recursion_balance"], "non-normalizable");
  EXPECT_EQ(invoke({"lee-coeffs", "--route", "both", "--E", "1.05"}).code, kExitBadInput);
}

TEST(RunTest, LeeConverge) {
  const auto o = invoke({"lee-converge", "--N", "2", "--nmax", "64"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(parse(o)["results"]["rows"].size(), 5u);
}

TEST(RunTest, Rep2AndRep4Reports) {
  const auto r2 = invoke({"rep2", "--b", "1", "--c", "-1", "--alpha", "1", "--beta", "4", "--gamma", "1"});
  EXPECT_EQ(r2.code, kExitOk) << r2.err;
  const auto j2 = parse(r2);
  EXPECT_EQ(j2["results"]["phase"], "unbroken");
  EXPECT_DOUBLE_EQ(j2["results"]["lambda_plus"][0].get<double>(), 3.0);

  const auto grassmann = invoke({"rep4", "--family", "rep4-12"});
  EXPECT_EQ(grassmann.code, kExitOk) << grassmann.err;
  EXPECT_TRUE(parse(grassmann)["results"]["grassmann_relations"].get<bool>());

  const auto blk = invoke({"rep4", "--family", "rep4-block", "--b", "1+2i", "--c", "-0.5i", "--alpha", "1.5",
                           "--beta4", "-0.3", "--gamma", "0.7"});
  EXPECT_EQ(blk.code, kExitOk) << blk.err;
  EXPECT_GE(parse(blk)["results"]["cpt_anticommutator_scalar"].get<double>(), 0.0);
}

TEST(RunTest, BrokenPhaseHasNoCMatrix) {
  const auto o = invoke({"rep2", "--beta", "1", "--gamma", "-1"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["results"]["phase"], "broken");
  EXPECT_FALSE(j["results"].contains("c_matrix"));
}

TEST(RunTest, InvalidInputExitsTwo) {
  EXPECT_EQ(invoke({}).code, kExitBadInput);
  EXPECT_EQ(invoke({"bogus"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"lee-spectrum", "--nmax", "abc"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"lee-spectrum", "--unknown", "1"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"rep2", "--b", "1", "--c", "1"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"verify", "--family", "nope"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"verify", "--tol", "-1"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"lee-spectrum", "--m", "0"}).code, kExitBadInput);
  const auto o = invoke({"lee-coeffs", "--route", "sideways"});
  EXPECT_EQ(o.code, kExitBadInput);
  EXPECT_NE(o.err.find("usage"), std::string::npos);
}

TEST(RunTest, NumbersRoundTripExactly) {
  const auto o = invoke({"lee-spectrum", "--m", "1", "--M", "1", "--g", "0.5", "--nmax", "8"});
  const auto levels = parse(o)["results"]["levels"];
  const auto rep = lee::truncated_spectrum({1.0, 1.0, 0.5, 8});
  ASSERT_EQ(levels.size(), static_cast<std::size_t>(rep.scored_levels));
  for (std::size_t n = 0; n < levels.size(); ++n) {
    EXPECT_EQ(levels[n]["truncated"].get<double>(), rep.truncated[n]);
    EXPECT_EQ(levels[n]["abs_err"].get<double>(), rep.abs_errors[n]);
  }
}

}  // namespace
}  // namespace ptalg::cli
