#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "ec/cli.hpp"

namespace {
struct Run {
  int code;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ec::cli::run(args, out, err);
  return {code, out.str()};
}
}  // namespace

TEST(Cli, PhiRoutes) {
  auto a = run({"phi", "-m", "1,1;0,1", "-p", "1/2,0", "-r", "classical"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.json()["phi"], "1/6");
  EXPECT_EQ(a.json()["fixed_point"], true);
  EXPECT_EQ(run({"phi", "-m", "1,0;2,1", "-p", "1/2,1/3", "-r", "bruhat"}).json()["phi"], "1/6");
  EXPECT_EQ(run({"phi", "-m", "1,0;0,1", "-p", "1/3,0", "-r", "recursive"}).json()["phi"], "0");
  EXPECT_EQ(run({"phi", "-m", "7,-18;2,-5", "-p", "1/2,1/2", "-r", "recursive"}).json()["phi"], "-1/3");
}

TEST(Cli, PreconditionsExitTwo) {
  auto r = run({"phi", "-m", "1,1;0,1", "-p", "1/3,1/3", "-r", "bruhat"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["error"], "precondition");
  EXPECT_EQ(run({"phi", "-m", "2,0;0,1", "-p", "1/2,0"}).code, 2);
  EXPECT_EQ(run({"phi", "-m", "1,1;0", "-p", "1/2,0"}).code, 2);
  EXPECT_EQ(run({"phi", "-m", "1,1;0,1", "-p", "1/2,0", "-r", "sideways"}).code, 2);
  EXPECT_EQ(run({"phi", "-m", "1,1;0,1"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "theorem", "--N", "5..2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, Decompose) {
  EXPECT_EQ(run({"decompose", "-m", "0,-1;1,0", "-k", "st"}).json()["factors"], nlohmann::json({"S"}));
  EXPECT_EQ(run({"decompose", "-m", "1,3;0,1", "-k", "st"}).json()["factors"], nlohmann::json({"T^3"}));
  const auto b = run({"decompose", "-m", "1,0;2,1", "-k", "bruhat"}).json();
  EXPECT_EQ(b["factors"], nlohmann::json({"1,1;0,2", "0,-1;1,0", "1,0;0,1", "1,1/2;0,1/2"}));
  EXPECT_EQ(b["cell"], "big");
  EXPECT_EQ(run({"decompose", "-m", "2,0;0,1", "-k", "st"}).code, 2);
}

TEST(Cli, ChecksPassAndAreDeterministic) {
  for (const char* suite : {"distribution", "symbolic", "three-line", "dedekind"}) {
    const auto a = run({"check", "--suite", suite, "--seed", "7"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, run({"check", "--suite", suite, "--seed", "7", "--workers", "3"}).out) << suite;
  }
  const auto t = run({"check", "--suite", "theorem", "--N", "2..4", "--seed", "7", "--trials", "5"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.json()["info"]["N_range"], "2..4");
}

TEST(Cli, ExactOutputsContainNoFloats) {
  const auto j = run({"check", "--suite", "dedekind"}).json();
  std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& v) {
    EXPECT_FALSE(v.is_number_float()) << v.dump();
    if (v.is_structured())
      for (const auto& c : v) walk(c);
  };
  walk(j);
}

TEST(Cli, Analytic) {
  for (auto [g, p] : {std::pair{"1,1;0,1", "1/2,0"}, {"0,-1;1,0", "1/2,1/2"}, {"1,0;2,1", "1/2,1/3"}}) {
    const auto r = run({"analytic", "-m", g, "-p", p, "--tolerance", "1e-6"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.json()["pass"], true);
  }
  EXPECT_EQ(run({"analytic", "-m", "1,1;0,1", "-p", "1/2,0", "--method", "direct"}).code, 0);
  EXPECT_EQ(run({"analytic", "-m", "1,1;0,1", "-p", "0,1/3"}).code, 2);
}

TEST(Cli, HumanTable) {
  const auto r = run({"phi", "-m", "1,1;0,1", "-p", "1/2,0", "--human"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("phi"), std::string::npos);
  EXPECT_NE(r.out.find("1/6"), std::string::npos);
  EXPECT_EQ(r.out.find('{'), std::string::npos);
}
