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

#include "invgen/error.h"
#include "invgen/logic.h"
#include "invgen/parser.h"
#include "invgen/solver.h"
#include "test_support.h"

namespace invgen {
namespace {

const std::map<std::string, Sort> kScope{
    {"a", Sort::kArray}, {"i", Sort::kInt}, {"n", Sort::kInt},
    {"x", Sort::kInt}};

Formula F(const std::string& text) { return ParseFormula(text, kScope); }

class SolverTest : public ::testing::Test {
 protected:
  void SetUp() override {
    solver_ = testing::MaybeSolver();
    if (!solver_) GTEST_SKIP() << "no SMT solver available";
  }
  std::shared_ptr<Solver> solver_;
};

TEST(SmtLib, Deterministic) {
  std::string q1 = ToSmtLib(F("0 <= i && i < n"), F("i + 1 <= n"));
  std::string q2 = ToSmtLib(F("0 <= i && i < n"), F("i + 1 <= n"));
  EXPECT_EQ(q1, q2);
  EXPECT_NE(q1.find("(check-sat)"), std::string::npos);
  EXPECT_NE(q1.find("(declare-const |i| Int)"), std::string::npos);
}

TEST(SmtLib, QuantifiersAndArrays) {
  std::string q =
      ToSmtLib(F("(\\forall int k; 0 <= k && k < n; a[k] == 1)"), F("a.length >= 0"));
  EXPECT_NE(q.find("forall"), std::string::npos);
}

TEST(SmtLib, LogicLine) {
  SolverConfig cfg;
  cfg.logic = "ALL";
  EXPECT_NE(ToSmtLib(True(), True(), cfg).find("(set-logic ALL)"),
            std::string::npos);
}

TEST_F(SolverTest, ValidImplication) {
  CheckVerdict v = solver_->CheckImplication(F("0 <= i && i < n"), F("i + 1 <= n"));
  EXPECT_TRUE(v.valid()) << v.ToString();
  EXPECT_FALSE(v.bounded);
}

TEST_F(SolverTest, InvalidImplicationModelReplays) {
  Formula ante = F("0 <= i && i <= n");
  Formula cons = F("i < n");
  CheckVerdict v = solver_->CheckImplication(ante, cons);
  ASSERT_TRUE(v.invalid()) << v.ToString();
  EXPECT_FALSE(EvalFormula(Implies(ante, cons), v.model));
}

TEST_F(SolverTest, ArrayModelReplays) {
  Formula ante = F("(\\forall int k; 0 <= k && k < i; a[k] == 1) && 0 <= i && i < a.length");
  Formula cons = F("(\\forall int k; 0 <= k && k < i + 1; a[k] == 1)");
  CheckVerdict v = solver_->CheckImplication(ante, cons);
  ASSERT_TRUE(v.invalid()) << v.ToString();
  EXPECT_FALSE(EvalFormula(Implies(ante, cons), v.model));
}

TEST_F(SolverTest, CachesRepeatedQueries) {
  solver_->CheckImplication(F("x > 1"), F("x > 0"));
  solver_->CheckImplication(F("x > 1"), F("x > 0"));
  EXPECT_GE(solver_->cache_hits(), 1);
}

TEST_F(SolverTest, CheckerSeam) {
  ImplicationChecker check = SolverChecker(solver_);
  EXPECT_TRUE(check(F("x == 2"), F("x * x == 4")).valid());
}

TEST(Solver, MissingExecutable) {
  SolverConfig cfg;
  cfg.path = "/nonexistent/solver-binary";
  EXPECT_THROW(
      {
        Solver s(cfg);
        s.CheckImplication(True(), True());
      },
      SolverLaunchError);
}

TEST(Bounded, Verdicts) {
  CheckVerdict v = BoundedCheck(F("0 <= i && i < n"), F("i + 1 <= n"), 3);
  EXPECT_TRUE(v.valid());
  EXPECT_TRUE(v.bounded);
  EXPECT_EQ(v.ToString(), "BoundedValid");
  v = BoundedCheck(F("0 <= i && i <= n"), F("i < n"), 3);
  ASSERT_TRUE(v.invalid());
  EXPECT_FALSE(EvalFormula(Implies(F("0 <= i && i <= n"), F("i < n")), v.model));
}

TEST(Bounded, FirstCounterexampleIsAscending) {
  CheckVerdict v = BoundedCheck(True(), F("x > 0"), 2);
  ASSERT_TRUE(v.invalid());
  EXPECT_EQ(v.model.Int("x"), -2);
}

TEST(Bounded, ArrayCounterexample) {
  CheckVerdict v = BoundedCheck(F("0 <= i"), F("i < a.length"), 2);
  ASSERT_TRUE(v.invalid());
  EXPECT_GE(v.model.Int("i"), v.model.Array("a").length());
}

TEST(Bounded, OversizedSpaceThrows) {
  std::map<std::string, Sort> wide;
  std::string text;
  for (int k = 0; k < 9; ++k) {
    std::string name = "v" + std::to_string(k);
    wide[name] = Sort::kInt;
    text += (k ? " + " : "") + name;
  }
  Formula f = ParseFormula(text + " >= 0", wide);
  EXPECT_THROW(BoundedCheck(True(), f, 4), Error);
}

TEST(Verdict, Rendering) {
  EXPECT_EQ(CheckVerdict::Valid().ToString(), "Valid");
  EXPECT_EQ(CheckVerdict::Unknown("timeout").ToString(), "Unknown(timeout)");
  State s;
  s.SetInt("x", 1);
  EXPECT_EQ(CheckVerdict::Invalid(s).ToString(), "Invalid {x: 1}");
}

}  // namespace
}  // namespace invgen
