#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "report.hpp"

namespace jetlie::cli {
namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jetlie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> with_format(std::vector<std::string> args, const std::string& format) {
  args.push_back("--format");
  args.push_back(format);
  return args;
}

const std::vector<std::vector<std::string>> kCommands = {
    {"tables", "--which", "structure"},
    {"tables", "--which", "adjoint", "--eps", "0.3"},
    {"tables", "--which", "derived"},
    {"determine"},
    {"invariance", "--reduce"},
    {"helmholtz"},
    {"euler-lagrange"},
    {"variational"},
    {"noether"},
    {"reduce", "--ansatz", "x*y", "--psi", "1/t", "--alpha", "1/27"},
    {"verify-solution", "--expr", "1/(x*y)", "--alpha", "1/27", "--mode", "symbolic"},
    {"geometry", "--at", "1,1"},
};

TEST(Cli, StructureTablePasses) {
  const Invocation r = run_cli({"tables", "--which", "structure", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "tables");
  EXPECT_EQ(j["status"], "pass");
  ASSERT_EQ(j["sections"][0]["kind"], "table");
  EXPECT_EQ(j["sections"][0]["rows"].size(), 9u);
  EXPECT_EQ(j["sections"][0]["rows"][4][7], "-X1");
  EXPECT_TRUE(j["skipped_nodes"].is_number_integer());
}

TEST(Cli, VerifySolutionPasses) {
  const Invocation r = run_cli({"verify-solution", "--expr", "1/(x*y)", "--alpha", "1/27", "--mode", "symbolic"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("verify-solution: pass"), std::string::npos);
}

TEST(Cli, DetermineWithoutSolutionPasses) {
  const Invocation r = run_cli({"determine", "--pde", "titeica"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("= 0"), std::string::npos);
}

TEST(Cli, FailedCheckExitsOne) {
  EXPECT_EQ(run_cli({"verify-solution", "--expr", "x*y", "--alpha", "2"}).code, 1);
  EXPECT_EQ(run_cli({"noether", "--q", "y*u_y"}).code, 1);
  const Invocation plane = run_cli({"geometry", "--expr", "x + y", "--format", "json"});
  EXPECT_EQ(plane.code, 1);
  EXPECT_EQ(nlohmann::json::parse(plane.out)["status"], "error");
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"tables", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"verify-solution", "--expr", "1/(x*", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run_cli({"geometry", "--at", "one,two"}).code, 2);
}

TEST(Cli, ParametersBindIntoSolutions) {
  const Invocation r = run_cli({"verify-solution", "--expr", "sqrt(1 + a*x*y)", "--alpha", "-a^2/4", "--param", "a=2"});
  EXPECT_EQ(r.code, 0) << r.out;
  setenv("JETLIE_GRID", "0.2,1.2,0.2,1.2,16,16", 1);
  const Invocation imp = run_cli({"verify-solution", "--implicit", "--expr", "u^2 + a*(x^2 + y^2) - 1", "--guess", "1",
                           "--branch", "u", "--alpha", "a^2", "--param", "a=1/4"});
  unsetenv("JETLIE_GRID");
  EXPECT_EQ(imp.code, 0) << imp.out;
}

TEST(Cli, JsonIsDeterministic) {
  for (const auto& args : kCommands) {
    const Invocation a = run_cli(with_format(args, "json"));
    const Invocation b = run_cli(with_format(args, "json"));
    EXPECT_EQ(a.out, b.out) << args.front();
  }
}

TEST(Cli, TextAndJsonCarryTheSameContent) {
  for (const auto& args : kCommands) {
    const Invocation text = run_cli(with_format(args, "text"));
    const Invocation json = run_cli(with_format(args, "json"));
    EXPECT_EQ(text.code, json.code) << args.front();
    const auto j = nlohmann::json::parse(json.out);
    EXPECT_NE(text.out.find(std::string(j["command"]) + ": " + std::string(j["status"])), std::string::npos);
    for (const auto& s : j["sections"]) {
      EXPECT_NE(text.out.find(std::string(s["title"])), std::string::npos) << s["title"];
      if (s["kind"] == "value") EXPECT_NE(text.out.find(std::string(s["value"])), std::string::npos);
      if (s["kind"] == "text") EXPECT_NE(text.out.find(std::string(s["text"])), std::string::npos);
      if (s["kind"] == "table") {
        for (const auto& row : s["rows"]) {
          for (const auto& cell : row) EXPECT_NE(text.out.find(std::string(cell)), std::string::npos) << cell;
        }
      }
    }
    EXPECT_NE(text.out.find("skipped nodes: " + std::to_string(int(j["skipped_nodes"]))), std::string::npos);
  }
}

}  // namespace
}  // namespace jetlie::cli
