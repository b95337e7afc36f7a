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

#include "invgen/bench.h"
#include "invgen/error.h"
#include "invgen/interpreter.h"
#include "invgen/logic.h"
#include "invgen/parser.h"
#include "invgen/program.h"
#include "test_support.h"

namespace invgen {
namespace {

using testing::CorpusDir;
using testing::LoadCorpusProgram;

TEST(Parser, CorpusRoundTrips) {
  Corpus corpus = LoadCorpus(CorpusDir());
  ASSERT_EQ(corpus.entries.size(), 20u);
  for (const auto& e : corpus.entries) {
    std::string text = RenderProgram(e.program);
    Program again = ParseProgram(text);
    EXPECT_TRUE(SameCode(e.program, again)) << e.id;
    EXPECT_EQ(RenderProgram(again), text) << e.id;
  }
}

TEST(Parser, ReadsHeaderClauses) {
  Program p = LoadCorpusProgram("single-loop/sum");
  EXPECT_EQ(p.name, "sum");
  ASSERT_EQ(p.params.size(), 1u);
  EXPECT_EQ(p.params[0].name, "n");
  EXPECT_EQ(ToString(p.pre), "n >= 0");
  EXPECT_EQ(ToString(p.post), "s * 2 == n * (n - 1)");
  EXPECT_EQ(p.NumLoops(), 1);
  EXPECT_EQ(p.Locals(), (std::vector<std::string>{"i", "s"}));
}

TEST(Parser, AnnotationsOnePerConjunct) {
  Program p = ParseProgram(R"(method m(int n)
  requires n >= 0
  ensures i == n
{
  int i = 0;
  //@ loop_invariant 0 <= i;
  //@ loop_invariant i <= n;
  while (i < n) {
    i = i + 1;
  }
}
)");
  ASSERT_EQ(p.annotations.count(1), 1u);
  EXPECT_EQ(p.annotations.at(1).size(), 2u);
  EXPECT_NE(RenderProgram(p).find("//@ loop_invariant i <= n;"),
            std::string::npos);
}

TEST(Parser, SyntaxErrorCarriesLocation) {
  try {
    ParseProgram("method m(int n)\n{\n  n = ;\n}\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.loc().line, 3);
  }
}

TEST(Parser, UndeclaredIdentifierIsTypeError) {
  try {
    ParseProgram("method m(int n)\n{\n  n = q + 1;\n}\n");
    FAIL() << "expected TypeError";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.identifier(), "q");
  }
}

TEST(Parser, ArrayUsedAsScalarIsTypeError) {
  EXPECT_THROW(ParseProgram("method m(int[] a)\n{\n  a = 1;\n}\n"),
               TypeError);
}

TEST(Parser, FormulaSpellings) {
  std::map<std::string, Sort> scope{{"x", Sort::kInt}, {"y", Sort::kInt}};
  Formula a = ParseFormula("x > 0 AND NOT (y < 0) => x + y > 0", scope);
  Formula b = ParseFormula("x > 0 && !(y < 0) ==> x + y > 0", scope);
  State s;
  for (int x = -2; x <= 2; ++x) {
    for (int y = -2; y <= 2; ++y) {
      s.SetInt("x", x);
      s.SetInt("y", y);
      EXPECT_EQ(EvalFormula(a, s), EvalFormula(b, s));
    }
  }
}

TEST(Interpreter, SumExample) {
  Program p = LoadCorpusProgram("single-loop/sum");
  State s0;
  s0.SetInt("n", 5);
  ExecResult r = Interpret(p, s0, 1000);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.state.Int("s"), 10);
  EXPECT_EQ(r.state.Int("i"), 5);
}

TEST(Interpreter, ObservesLoopHeads) {
  Program p = LoadCorpusProgram("single-loop/sum");
  State s0;
  s0.SetInt("n", 3);
  int heads = 0;
  InterpretOptions opts;
  opts.on_loop_head = [&](int id, const State&) {
    EXPECT_EQ(id, 1);
    ++heads;
  };
  ASSERT_TRUE(Interpret(p, s0, opts).ok());
  EXPECT_EQ(heads, 4);
}

TEST(Interpreter, OutOfBoundsStore) {
  Program p = ParseProgram("method m(int[] a)\n{\n  a[3] = 1;\n}\n");
  State s0;
  s0.SetArray("a", {0, 0});
  ExecResult r = Interpret(p, s0, 100);
  EXPECT_EQ(r.status, ExecResult::Status::kError);
  EXPECT_EQ(r.error.kind, EvalError::Kind::kOutOfBounds);
}

TEST(Interpreter, FuelExhaustionDiverges) {
  Program p = ParseProgram(
      "method m(int n)\n{\n  while (n == n) {\n    n = n + 1;\n  }\n}\n");
  State s0;
  s0.SetInt("n", 0);
  EXPECT_EQ(Interpret(p, s0, 50).status, ExecResult::Status::kDiverged);
}

TEST(Interpreter, ScriptedNondet) {
  Program p = LoadCorpusProgram("random-branch/coin_steps");
  State s0;
  s0.SetInt("n", 4);
  ScriptedNondet always_one({}, true);
  InterpretOptions opts;
  opts.nondet = &always_one;
  ExecResult r = Interpret(p, s0, opts);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.state.Int("x"), 4);
  ScriptedNondet twos({}, false);
  opts.nondet = &twos;
  r = Interpret(p, s0, opts);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.state.Int("x"), 4);
  EXPECT_EQ(twos.consumed(), 0u);
}

TEST(Interpreter, EuclideanDivision) {
  Program p = ParseProgram(
      "method m(int x, int y)\n{\n  x = -7 / 2;\n  y = -7 % 2;\n}\n");
  State s0;
  s0.SetInt("x", 0);
  s0.SetInt("y", 0);
  ExecResult r = Interpret(p, s0, 10);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.state.Int("x"), -4);
  EXPECT_EQ(r.state.Int("y"), 1);
}

TEST(Interpreter, DivisionByZero) {
  Program p = ParseProgram("method m(int x)\n{\n  x = 1 / x;\n}\n");
  State s0;
  s0.SetInt("x", 0);
  ExecResult r = Interpret(p, s0, 10);
  EXPECT_EQ(r.error.kind, EvalError::Kind::kDivByZero);
}

TEST(Program, StripGhostsKeepsCode) {
  Program p = ParseProgram(R"(method m(int n)
{
  int i = 0;
  //@ ghost int w = 0;
  while (i < n) {
    i = i + 1;
    //@ set w = i;
  }
}
)");
  EXPECT_EQ(p.Ghosts(), (std::vector<std::string>{"w"}));
  Program q = StripGhosts(p);
  EXPECT_TRUE(q.Ghosts().empty());
  EXPECT_TRUE(SameCode(p, q));
}

}  // namespace
}  // namespace invgen
