#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

using annulus::Json;

namespace {

struct Outcome {
  int code;
  std::string out, err;

  Json json() const { return Json::parse(out.substr(0, out.find('\n'))); }
  std::vector<Json> lines() const {
    std::vector<Json> v;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) v.push_back(Json::parse(line));
    return v;
  }
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "annulus");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = annulus::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json rational(const char* num, const char* den) { return Json{{"num", num}, {"den", den}}; }

}  // namespace

TEST(Cli, CheckMemberWithoutWitness) {
  const auto r = call({"check", "--shape", "5,3", "--perm", "(1,8)(3,4,7)(5,6)"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"member\":true,\"connected\":true,\"witness\":null}\n");
}

TEST(Cli, CheckReportsWitness) {
  const auto r = call({"check", "--shape", "5,3", "--perm", "(1,3)(2,4)", "--method", "patterns"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_FALSE(j["member"].get<bool>());
  EXPECT_EQ(j["witness"]["kind"], "AC1");

  const auto disc = call({"check", "--shape", "6", "--perm", "(1,3)(2,4)"}).json();
  EXPECT_FALSE(disc["member"].get<bool>());
  EXPECT_EQ(disc["witness"]["kind"], "DC");
}

TEST(Cli, Complement) {
  const auto r = call({"complement", "--shape", "5,3", "--perm", "(1,8)(3,4,7)(5,6)"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["kreweras"], "(1,2,7)(4,6)(5,8)");
}

TEST(Cli, CountClosedFormAndEnumeration) {
  EXPECT_EQ(call({"count", "--shape", "2,2", "--connected"}).out, "{\"count\":\"18\",\"method\":\"closed_form\"}\n");
  for (const char* which : {"--connected", "--disconnected"}) {
    const auto a = call({"count", "--shape", "3,2", which}).json();
    const auto b = call({"count", "--shape", "3,2", which, "--method", "enumerate"}).json();
    EXPECT_EQ(a["count"], b["count"]) << which;
  }
  EXPECT_EQ(call({"count", "--shape", "5"}).json()["count"], "42");
}

TEST(Cli, EnumerateOneLinePerPermutation) {
  const auto r = call({"enumerate", "--shape", "2,2", "--connected"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.lines().size(), 18u);
  EXPECT_EQ(call({"enumerate", "--shape", "4"}).lines().size(), 14u);
}

TEST(Cli, FiberAndParity) {
  const auto f = call({"fiber", "--shape", "2,2", "--partition", "{1,3}{2,4}"}).json();
  EXPECT_EQ(f["size"], 1);
  EXPECT_EQ(f["connecting_blocks"], 2);
  const auto p = call({"parity-bijection", "--shape", "1,1", "--perm", "(1,2)"}).json();
  EXPECT_EQ(p["shape"], "2,2");
}

TEST(Cli, ExactMoments) {
  EXPECT_EQ(call({"moment", "--words", "1,1", "--M", "4", "--N", "4"}).json()["value"], rational("2", "1"));
  EXPECT_EQ(call({"moment", "--ensemble", "gue", "--words", "1,1,1,1", "--N", "8"}).json()["value"],
            rational("129", "64"));
}

TEST(Cli, LimitMoment) {
  const auto j = call({"moment", "--words", "1,1,1", "--limit", "--c", "2"}).json();
  EXPECT_EQ(j["poly_c"], Json::parse("[0,1,3,1]"));
  EXPECT_EQ(j["value"], rational("22", "1"));
  EXPECT_EQ(call({"moment", "--ensemble", "gue", "--words", "1,1,1,1", "--limit"}).json()["count"], "2");
}

TEST(Cli, CovarianceAndCumulant) {
  const auto c = call({"covariance", "--v", "1", "--w", "1,2", "--M", "3", "--N", "4"}).json();
  EXPECT_TRUE(c["equal"].get<bool>());
  const auto mobius = call({"cumulant", "--words", "1;1;1", "--M", "4", "--N", "4"}).json();
  const auto connected = call({"cumulant", "--words", "1;1;1", "--M", "4", "--N", "4", "--connected"}).json();
  EXPECT_EQ(mobius["value"], connected["value"]);
  EXPECT_EQ(call({"cumulant", "--words", "1", "--M", "1", "--N", "1", "--connected", "--mobius"}).code, 2);
}

TEST(Cli, SimulateIsDeterministicAndNearExact) {
  const std::vector<std::string> args{"simulate", "--words", "1,1", "--M", "4", "--N", "4", "--trials", "2000", "--seed", "11"};
  const auto a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = a.json();
  EXPECT_EQ(j["seed"], 11);
  EXPECT_LT(std::fabs(j["z_score"].get<double>()), 5.0);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv(annulus::cli::kSeedVariable, "11", 1);
  const auto a = call({"simulate", "--words", "1", "--M", "2", "--N", "2", "--trials", "50"});
  ::setenv(annulus::cli::kSeedVariable, "oops", 1);
  const auto bad = call({"simulate", "--words", "1", "--M", "2", "--N", "2", "--trials", "50"});
  ::unsetenv(annulus::cli::kSeedVariable);
  EXPECT_EQ(a.json()["seed"], 11);
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, DefectAnyNumberOfCircles) {
  const auto j = call({"defect", "--shape", "2,2,2", "--perm", "(1,3,5)"}).json();
  EXPECT_EQ(j["defect"], 0);
  EXPECT_EQ(j["orbits"].get<int>() + j["complement_orbits"].get<int>(), j["bound"].get<int>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({"check", "--shape", "5,3"}).code, 2);
  EXPECT_EQ(call({"check", "--shape", "5,3", "--perm", "(1,9)"}).code, 2);
  EXPECT_EQ(call({"check", "--shape", "5,x", "--perm", "(1,2)"}).code, 2);
  EXPECT_EQ(call({"count", "--shape", "2,2", "--connected", "--disconnected"}).code, 2);
  EXPECT_EQ(call({"enumerate", "--shape", "2,2", "--max-n", "13"}).code, 2);
  EXPECT_EQ(call({"check", "--shape", "2,2,2", "--perm", "(1,3)"}).code, 1);
  EXPECT_EQ(call({"enumerate", "--shape", "7,7"}).code, 1);
  EXPECT_EQ(call({"complement", "--shape", "4", "--perm", "(1,3)(2,4)"}).code, 1);
  EXPECT_EQ(call({"simulate", "--ensemble", "gue", "--words", "1", "--M", "3", "--N", "4"}).code, 1);
  EXPECT_EQ(call({"moment", "--words", "1,1,1,1,1,1,1,1,1,1"}).code, 2);
  EXPECT_EQ(call({"moment", "--words", "1,1,1,1,1,1,1,1,1,1", "--M", "2", "--N", "2"}).code, 1);
}

TEST(Cli, VerifySingleCriterion) {
  const auto r = call({"verify", "--criterion", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.json();
  EXPECT_EQ(j["criterion"], 1);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(call({"verify", "--criterion", "14"}).code, 2);
}
