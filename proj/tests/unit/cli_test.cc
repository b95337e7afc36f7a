// Copyright 2026 The invgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_support.h"

namespace invgen {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  std::string cmd = std::string(INVGEN_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("invgen_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string Out() const { return "--out " + (dir_ / "out").string(); }

  fs::path dir_;
};

const char* kLoop = R"(method m(int n)
  requires n >= 0
  ensures i == n
{
  int i = 0;
%s  while (i < n) {
    i = i + 1;
  }
}
)";

std::string WithAnnotation(const std::string& lines) {
  std::string s = kLoop;
  s.replace(s.find("%s"), 2, lines);
  return s;
}

bool HaveSolver() { return testing::MaybeSolver() != nullptr; }

TEST_F(CliTest, HelpGolden) {
  CliRun r = Cli("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, testing::ReadFile(std::string(INVGEN_GOLDEN_DIR) + "/help.txt"));
  for (const char* flag : {"--generator", "--solver", "--solver-timeout-ms", "--max-refinement",
                           "--max-repair", "--runs", "--seed", "--llm-base", "--llm-model", "--out"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  EXPECT_NE(Cli("bench --help").out.find("--methods"), std::string::npos);
  EXPECT_NE(Cli("wp --help").out.find("--post"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("infer " + (dir_ / "missing.imp").string()).code, 2);
  EXPECT_EQ(Cli("infer " + Write("bad.imp", "method m(\n")).code, 2);
}

TEST_F(CliTest, InferSum) {
  if (!HaveSolver()) GTEST_SKIP() << "no SMT solver available";
  CliRun r = Cli("infer " + testing::CorpusFile("single-loop/sum") + " " + Out());
  EXPECT_EQ(r.code, 0) << r.out;
  fs::path annotated = dir_ / "out" / "sum.annotated.imp";
  ASSERT_TRUE(fs::exists(annotated));
  EXPECT_NE(testing::ReadFile(annotated.string()).find("//@ loop_invariant"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "sum.transcript.json"));
}

TEST_F(CliTest, InferFalsePost) {
  if (!HaveSolver()) GTEST_SKIP() << "no SMT solver available";
  std::string f = Write("f.imp", "method f(int n)\n  requires n >= 0\n  ensures false\n{\n"
                                 "  int i = 0;\n  while (i < n) {\n    i = i + 1;\n  }\n}\n");
  CliRun r = Cli("infer " + f + " " + Out());
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(CliTest, InferWithoutSolver) {
  CliRun r = Cli("infer " + testing::CorpusFile("single-loop/sum") +
              " --solver /nonexistent/z3 " + Out());
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST_F(CliTest, VerifyExitCodes) {
  if (!HaveSolver()) GTEST_SKIP() << "no SMT solver available";
  std::string good = Write("good.imp", WithAnnotation("  //@ loop_invariant 0 <= i;\n"
                                                      "  //@ loop_invariant i <= n;\n"));
  CliRun r = Cli("verify " + good + " " + Out());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("Preservation (loop 1): Valid"), std::string::npos) << r.out;

  std::string weak = Write("weak.imp", WithAnnotation("  //@ loop_invariant true;\n"));
  r = Cli("verify " + weak + " " + Out());
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("Exit (loop 1): Invalid {"), std::string::npos) << r.out;

  std::string bare = Write("bare.imp", WithAnnotation(""));
  r = Cli("verify " + bare + " " + Out());
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST_F(CliTest, WpAndSegment) {
  std::string f = Write("w.imp", "method w(int x)\n  ensures x > 5\n{\n  x = x + 1;\n}\n");
  CliRun r = Cli("wp " + f);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x > 4\n");
  r = Cli("wp " + f + " --post \"x == 0\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x == -1\n");
  r = Cli("segment " + testing::CorpusFile("single-loop/sum"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("// while 1 open"), std::string::npos);
  EXPECT_EQ(Cli("wp " + testing::CorpusFile("single-loop/sum")).code, 2);
}

TEST_F(CliTest, BenchMethodsSelection) {
  if (!HaveSolver()) GTEST_SKIP() << "no SMT solver available";
  CliRun r = Cli("bench " + testing::CorpusDir() + " --methods adhoc,neuroinv --runs 1 " + Out());
  EXPECT_EQ(r.code, 0) << r.out;
  std::string json = testing::ReadFile((dir_ / "out" / "report.json").string());
  EXPECT_NE(json.find("\"adhoc\""), std::string::npos);
  EXPECT_NE(json.find("\"neuroinv\""), std::string::npos);
  EXPECT_EQ(json.find("\"neuroinv-star\""), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "records.jsonl"));
  EXPECT_EQ(Cli("bench " + (dir_ / "nocorpus").string() + " " + Out()).code, 2);
}

}  // namespace
}  // namespace invgen
