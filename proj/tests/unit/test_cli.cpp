// Copyright 2026 The wbal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace wbal::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const std::string kData = WBAL_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome wbal(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const CommandResult r = run(args, out, err);
  return {r.exit_code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wbal_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

struct Case {
  std::vector<std::string> solve;  // without --json
  std::vector<std::string> geometry;  // flags `check` needs
};

std::vector<Case> solver_cases() {
  return {
      {{"balance2d", "--polygon", data("square.txt"), "--weights", "3 2 2"}, {"--polygon", data("square.txt")}},
      {{"balance2d", "--polygon", data("star.txt"), "--weights", "5 4 3 2 1"}, {"--polygon", data("star.txt")}},
      {{"balance2d-fast", "--polygon", data("star.txt"), "--weights", "5 4 3 2 1"}, {"--polygon", data("star.txt")}},
      {{"antipodal", "--polygon", data("square.json"), "--target", "0.5 0"}, {"--polygon", data("square.json")}},
      {{"reduce-partition", "--partition", "3 1 1 1"}, {}},
      {{"solve-partition", "--partition", "3 1 1 1"}, {}},
      {{"gadget-decide", "--partition", "1 1"}, {}},
      {{"tripodal", "--off", data("cube.off"), "--grid", "64x64"}, {"--off", data("cube.off")}},
      {{"tripodal", "--off", data("star.off")}, {"--off", data("star.off")}},
      {{"tripodal-oracle", "--off", data("simplex.off")}, {"--off", data("simplex.off")}},
      {{"four-on-edges", "--off", data("hull.off")}, {"--off", data("hull.off")}},
      {{"four-on-edges", "--off", data("star.off"), "--plane", "0.2 0.1 1"}, {"--off", data("star.off")}},
      {{"three-on-edges", "--hrep", data("random3.hrep")}, {"--hrep", data("random3.hrep")}},
      {{"three-on-edges", "--hrep", data("cube.hrep"), "--target", "0.9 0.9 0.9"}, {"--hrep", data("cube.hrep")}},
      {{"halving", "--hrep", data("random5.hrep"), "--seed", "3"}, {"--hrep", data("random5.hrep")}},
      {{"halving", "--hrep", data("cube.hrep")}, {"--hrep", data("cube.hrep")}},
      {{"pow2", "--hrep", data("hypercube4.hrep")}, {"--hrep", data("hypercube4.hrep")}},
      {{"compose", "--hrep", data("product6.hrep")}, {"--hrep", data("product6.hrep")}},
      {{"prop9-fixture", "--dim", "5"}, {}},
      {{"prop9-check", "--dim", "6", "--k", "2"}, {}},
      {{"prop9-check", "--hrep", data("hypercube4.hrep"), "--k", "1"}, {"--hrep", data("hypercube4.hrep")}},
  };
}

TEST_F(CliTest, EveryCertificateRoundTrips) {
  int n = 0;
  for (const Case& c : solver_cases()) {
    const std::string cert = tmp("c" + std::to_string(n++) + ".json");
    std::vector<std::string> args = c.solve;
    args.insert(args.end(), {"--json", cert});
    const Outcome r = wbal(args);
    ASSERT_EQ(r.code, kOk) << args[0] << ": " << r.err;
    std::vector<std::string> check = {"check", "--json", cert};
    check.insert(check.end(), c.geometry.begin(), c.geometry.end());
    const Outcome k = wbal(check);
    EXPECT_EQ(k.code, kOk) << args[0] << ": " << k.err << k.out;
    const Json j = Json::parse(k.out);
    EXPECT_EQ(j["checked"], args[0]);
    EXPECT_TRUE(j["pass"].get<bool>());
  }
}

TEST_F(CliTest, OutputIsByteReproducible) {
  for (const Case& c : solver_cases()) {
    const Outcome a = wbal(c.solve);
    const Outcome b = wbal(c.solve);
    ASSERT_EQ(a.code, kOk) << c.solve[0];
    EXPECT_EQ(a.out, b.out) << c.solve[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST_F(CliTest, FiguresAreByteReproducible) {
  for (int i = 0; i < 2; ++i) {
    const std::string s = std::to_string(i);
    ASSERT_EQ(wbal({"balance2d", "--polygon", data("star.txt"), "--weights", "3 2 2", "--trace", "--svg",
                    tmp("b" + s + ".svg")})
                  .code,
              kOk);
    ASSERT_EQ(wbal({"tripodal", "--off", data("cube.off"), "--grid", "32x32", "--svg", tmp("t" + s + ".svg"),
                    "--obj", tmp("t" + s + ".obj")})
                  .code,
              kOk);
    ASSERT_EQ(wbal({"pow2", "--hrep", data("cube.hrep"), "--obj", tmp("p" + s + ".obj")}).code, kOk);
  }
  for (const char* f : {"b", "t", "p"}) {
    const std::string ext = std::string(f) == "b" ? ".svg" : ".obj";
    const std::string a = slurp(tmp(std::string(f) + "0" + ext));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(tmp(std::string(f) + "1" + ext)));
  }
  EXPECT_NE(slurp(tmp("b0.svg")).find("<svg"), std::string::npos);
  EXPECT_NE(slurp(tmp("t0.obj")).find("\nf "), std::string::npos);
}

TEST_F(CliTest, WorkedBalanceExample) {
  const Outcome r = wbal({"balance2d", "--polygon", data("square.txt"), "--weights", "3 2 2"});
  ASSERT_EQ(r.code, kOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j["certificate"]["pass"].get<bool>());
  EXPECT_LE(j["certificate"]["residual"].get<double>(), j["certificate"]["eps_bal"].get<double>());
  const Json& a = j["result"]["assignments"];
  EXPECT_NEAR(a[0]["point"][0].get<double>(), -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(a[1]["point"][1].get<double>(), -0.5, 1e-12);
}

TEST_F(CliTest, TripodalCubeRadius) {
  const Outcome r = wbal({"tripodal", "--off", data("cube.off"), "--svg", tmp("tri.svg"), "--json", tmp("t.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(slurp(tmp("t.json")));
  EXPECT_TRUE(j["certificate"]["pass"].get<bool>());
  const double radius = j["result"]["radius"].get<double>();
  EXPECT_GT(radius, 1.0 - 1e-9);        // at least the inradius
  EXPECT_LT(radius, std::sqrt(3.0));    // below the circumradius
  EXPECT_TRUE(fs::exists(tmp("tri.svg")));
}

TEST_F(CliTest, NotFoundExitCodes) {
  EXPECT_EQ(wbal({"gadget-decide", "--partition", "2 3 7"}).code, kNotFound);
  EXPECT_EQ(wbal({"solve-partition", "--partition", "2 3 7"}).code, kNotFound);
  EXPECT_EQ(wbal({"balance2d", "--polygon", data("square.txt"), "--weights", "10 1"}).code, kNotFound);
  EXPECT_EQ(wbal({"compose", "--hrep", data("hypercube9.hrep")}).code, kNotFound);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(wbal({}).code, kInputError);
  EXPECT_EQ(wbal({"no-such-command"}).code, kInputError);
  EXPECT_EQ(wbal({"balance2d", "--polygon", tmp("missing.txt"), "--weights", "1 1"}).code, kInputError);
  EXPECT_EQ(wbal({"balance2d", "--polygon", data("square.txt"), "--weights", "1 x"}).code, kInputError);
  EXPECT_EQ(wbal({"balance2d", "--polygon", data("square.txt")}).code, kInputError);
  EXPECT_EQ(wbal({"tripodal", "--off", data("square.txt")}).code, kInputError);
  EXPECT_EQ(wbal({"balance2d", "--polygon", data("square.txt"), "--weights", "1 1", "--target", "5 0"}).code,
            kInputError);
  const Outcome r = wbal({"check"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, CheckRejectsTamperedCertificate) {
  const std::string cert = tmp("b.json");
  ASSERT_EQ(wbal({"balance2d", "--polygon", data("square.txt"), "--weights", "3 2 2", "--json", cert}).code, kOk);
  Json j = Json::parse(slurp(cert));
  j["result"]["assignments"][0]["point"][0] = -0.6;
  std::ofstream(tmp("bad.json")) << j.dump(2);
  const Outcome r = wbal({"check", "--json", tmp("bad.json"), "--polygon", data("square.txt")});
  EXPECT_EQ(r.code, kVerifyFailed);
  EXPECT_FALSE(Json::parse(r.out)["pass"].get<bool>());

  // A different geometry file than the one certified is an input error.
  EXPECT_EQ(wbal({"check", "--json", cert, "--polygon", data("star.txt")}).code, kInputError);

  const std::string t = tmp("t.json");
  ASSERT_EQ(wbal({"three-on-edges", "--hrep", data("cube.hrep"), "--json", t}).code, kOk);
  Json s = Json::parse(slurp(t));
  s["result"]["points"][0]["x"][0] = 0.25;
  std::ofstream(tmp("bad3.json")) << s.dump(2);
  EXPECT_EQ(wbal({"check", "--json", tmp("bad3.json"), "--hrep", data("cube.hrep")}).code, kVerifyFailed);
}

TEST_F(CliTest, ReducePartitionWritesGadget) {
  const Outcome r = wbal({"reduce-partition", "--partition", "1 1", "--out", tmp("g.txt")});
  ASSERT_EQ(r.code, kOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["weights"], Json::parse("[4.0, 1.0, 1.0]"));
  // The heavy weight exceeds the rest, so the general balancer declines;
  // only the structural decision applies.
  EXPECT_EQ(wbal({"balance2d", "--polygon", tmp("g.txt"), "--weights", "4 1 1"}).code, kNotFound);
  EXPECT_EQ(wbal({"gadget-decide", "--partition", "1 1"}).code, kOk);
}

TEST_F(CliTest, SeedChangesOnlyWhatItShould) {
  const Outcome a = wbal({"halving", "--hrep", data("cube.hrep"), "--seed", "1"});
  const Outcome b = wbal({"halving", "--hrep", data("cube.hrep"), "--seed", "1"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["parameters"]["seed"], 1);
}

}  // namespace
}  // namespace wbal::cli
