#include <gtest/gtest.h>

#include <string>

#include <json.hpp>

#include "../support/run_command.hpp"

namespace {

using spinnet::testing::run_command;
using Json = nlohmann::json;

std::string cli(const std::string& args) {
  return std::string(SPINNET_CLI) + " " + args + " 2>/dev/null";
}

std::string fixture(const std::string& name) { return std::string(SPINNET_FIXTURES) + "/" + name; }

TEST(CliEval, ClosedThetaPrintsARational) {
  const auto r = run_command(cli("eval " + fixture("theta.snet")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "-3/1\n");
}

TEST(CliEval, FloatMode) {
  const auto r = run_command(cli("--mode float eval " + fixture("theta.snet")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "-3\n");
}

TEST(CliEval, ExitCodes) {
  EXPECT_EQ(run_command(cli("eval " + fixture("singlet.snet"))).exit_code, 3);
  EXPECT_EQ(run_command(cli("eval " + fixture("no_such_file.snet"))).exit_code, 1);
  EXPECT_EQ(run_command(cli("eval " + fixture("bad.snet"))).exit_code, 2);
  EXPECT_EQ(run_command(cli("frobnicate")).exit_code, 2);
  EXPECT_EQ(run_command(cli("")).exit_code, 2);
}

TEST(CliEval, ParseErrorsCarrySpans) {
  const auto r = run_command(std::string(SPINNET_CLI) + " eval " + fixture("bad.snet") + " 2>&1");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("bad.snet:1:9: semantic error"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("bad.snet:2:16: semantic error"), std::string::npos) << r.out;
}

TEST(CliEval, ReadsStandardInput) {
  const auto r = run_command("cat " + fixture("theta.snet") + " | " + cli("--format json eval -"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(Json::parse(r.out)["value"], "-3/1");
}

TEST(CliJoin, Singlet) {
  const auto r = run_command(cli("join " + fixture("singlet.snet") + " a b"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "{\"0\": \"1/1\"}\n");
  const auto j = run_command(cli("--format json join " + fixture("singlet.snet") + " a b"));
  EXPECT_EQ(Json::parse(j.out)["distribution"], Json::parse(R"({"0": "1/1"})"));
}

TEST(CliExchange, SingletAndTriplet) {
  const auto s = run_command(cli("exchange " + fixture("singlet.snet") + " a b"));
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_EQ(s.out.rfind("p_up=0 p_down=1 theta=3.14159", 0), 0U) << s.out;
  const auto t = run_command(cli("exchange " + fixture("triplet.snet") + " a b"));
  EXPECT_EQ(t.out.rfind("p_up=1 p_down=0 theta=0 ", 0), 0U) << t.out;
  const auto j = Json::parse(run_command(cli("--format json exchange " + fixture("singlet.snet") + " a b")).out);
  EXPECT_EQ(j["p_up"], "0/1");
  EXPECT_DOUBLE_EQ(j["theta_degrees"].get<double>(), 180.0);
}

TEST(CliExchange, UnknownEndIsAUsageError) {
  EXPECT_EQ(run_command(cli("exchange " + fixture("singlet.snet") + " a nope")).exit_code, 2);
  EXPECT_EQ(run_command(cli("exchange " + fixture("singlet.snet") + " a a")).exit_code, 3);
}

TEST(CliAngles, MatrixIsSymmetric) {
  const auto r = run_command(cli("--format json --jobs 2 angles " + fixture("tripod.snet") + " x y z"));
  ASSERT_EQ(r.exit_code, 0);
  const auto a = Json::parse(r.out)["angles"];
  ASSERT_EQ(a.size(), 3U);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(a[i][k], a[k][i]);
  }
  EXPECT_EQ(run_command(cli("angles " + fixture("tripod.snet") + " x")).exit_code, 2);
}

TEST(CliGeometry, AlignedEnds) {
  const auto r = run_command(cli("geometry " + fixture("aligned.snet") + " x y z"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("embeddable=true residual=0 ", 0), 0U) << r.out;
  const auto j = Json::parse(run_command(cli("--format json --tol 1e-6 geometry " + fixture("aligned.snet") + " x y z")).out);
  EXPECT_EQ(j["embeddable"], true);
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(run_command(cli("--tol -1 geometry " + fixture("aligned.snet") + " x y z")).exit_code, 2);
}

TEST(CliStability, ZeroRepetitions) {
  const auto r = run_command(cli("--format json stability " + fixture("pair_large.snet") + " a b --reps 0"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["angles"].empty());
  EXPECT_TRUE(j["outcomes"].empty());
}

TEST(CliStability, SameSeedSameBytes) {
  const std::string cmd = cli("--format json --seed 42 stability " + fixture("pair_large.snet") + " a b --reps 6");
  const auto first = run_command(cmd);
  const auto second = run_command(cmd);
  ASSERT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(Json::parse(first.out)["outcomes"].size(), 6U);
}

TEST(CliStability, ExhaustedEndIsADomainError) {
  EXPECT_EQ(run_command(cli("stability " + fixture("singlet.snet") + " a b --reps 1")).exit_code, 3);
}

TEST(CliDynamics, IdentityNeedsNothing) {
  const auto r = run_command(cli("--format json dynamics --target I --ancillas 2 --max-len 3"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["sequence"].empty());
  EXPECT_DOUBLE_EQ(j["fidelity"].get<double>(), 1.0);
}

TEST(CliDynamics, BitFlipWithPlusAncilla) {
  const auto r =
      run_command(cli("--format json dynamics --target X --ancillas 2 --max-len 6 --ancilla-state plus"));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["fidelity"].get<double>(), 0.753778361444409, 1e-12);
  EXPECT_EQ(j["sequence"], Json::parse(R"j(["T(0,2)", "S(0,1)", "T(1,2)"])j"));
}

TEST(CliDynamics, Errors) {
  EXPECT_EQ(run_command(cli("dynamics --target W")).exit_code, 2);
  EXPECT_EQ(run_command(cli("dynamics --target X --ancillas 6")).exit_code, 3);
  EXPECT_EQ(run_command(cli("dynamics --target X --ancillas 2 --max-len 6 --node-limit 10")).exit_code, 3);
}

}  // namespace
