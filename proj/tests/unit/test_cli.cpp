// Copyright 2026 The lindlearn Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace lindlearn::cli {
namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lindlearn");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lindlearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"fit-rates"}).code, kExitUsage);
  EXPECT_EQ(invoke({"gen-library", "--dim"}).code, kExitUsage);
}

TEST_F(CliTest, ConfigAndDataErrors) {
  EXPECT_EQ(invoke({"learn", "--config", (dir_ / "missing.ini").string()}).code, kExitConfig);
  EXPECT_EQ(invoke({"learn", "--out", dir_.string()}).code, kExitConfig);
  const fs::path bad = write("bad.ini", "[system]\ndim = 5\n");
  EXPECT_EQ(invoke({"gen-library", "--config", bad.string()}).code, kExitConfig);
  const fs::path data = write("lt.csv", "0,1\n0.05,oops\n");
  const fs::path cfg = write("c.ini", "[data]\nlt_path = " + data.string() + "\n");
  const Invocation r = invoke({"learn", "--config", cfg.string(), "--out", dir_.string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find(":2"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"simulate", "--preset", "nope", "--out", dir_.string()}).code, kExitUsage);
}

TEST_F(CliTest, GenLibrary) {
  ASSERT_EQ(invoke({"gen-library", "--dim", "2", "--complexity", "2", "--out", dir_.string()}).code, kExitOk);
  const std::string text = slurp(dir_ / "library_d2_c2.txt");
  EXPECT_NE(text.find("op sp+sm "), std::string::npos);
}

TEST_F(CliTest, SimulateLearnAnalyzeDeterministic) {
  ASSERT_EQ(invoke({"simulate", "--preset", "driven-two-level", "--out", dir_.string()}).code, kExitOk);
  for (const char* f : {"lt.csv", "g2.csv", "lt_ideal.csv", "g2_ideal.csv", "model.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const fs::path cfg = write("run.ini", "[sampler]\nsteps = 300\nthinning = 5\n[data]\nlt_path = " +
                                            (dir_ / "lt.csv").string() + "\ng2_path = " +
                                            (dir_ / "g2.csv").string() + "\n[analysis]\nsubsample = 1\n");
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(invoke({"learn", "--config", cfg.string(), "--chains", "2", "--seed", "5", "--out", a.string()}).code,
            kExitOk);
  ASSERT_EQ(invoke({"learn", "--config", cfg.string(), "--chains", "2", "--seed", "5", "--threads", "2", "--out",
                    b.string()})
                .code,
            kExitOk);
  for (const char* f : {"chain_000.txt", "chain_001.txt", "summary.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_NE(slurp(a / "chain_000.txt"), slurp(a / "chain_001.txt"));

  const Invocation an = invoke({"analyze", "--config", cfg.string(), "--out", a.string(),
                                (a / "chain_000.txt").string(), (a / "chain_001.txt").string()});
  ASSERT_EQ(an.code, kExitOk) << an.err;
  EXPECT_TRUE(fs::exists(a / "report.txt"));
  EXPECT_TRUE(fs::exists(a / "signatures.csv"));
  EXPECT_TRUE(fs::exists(a / "class_0_LT.csv"));

  const Invocation mx = invoke({"mix", "--out", a.string(), (a / "chain_000.txt").string(),
                                (a / "chain_001.txt").string()});
  ASSERT_EQ(mx.code, kExitOk) << mx.err;
  EXPECT_TRUE(fs::exists(a / "mixing.csv"));

  const Invocation fr = invoke({"fit-rates", "--config", cfg.string(), "--model", (dir_ / "model.txt").string(),
                                "--out", a.string()});
  ASSERT_EQ(fr.code, kExitOk) << fr.err;
  EXPECT_NE(slurp(a / "rate_summary.txt").find("L:sm"), std::string::npos);
}

}  // namespace
}  // namespace lindlearn::cli
