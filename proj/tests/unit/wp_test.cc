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
#include "invgen/interpreter.h"
#include "invgen/logic.h"
#include "invgen/parser.h"
#include "invgen/segment.h"
#include "invgen/wp.h"

namespace invgen {
namespace {

struct Case {
  Program p;
  Formula wp;
};

Case Load(const std::string& params, const std::string& ensures,
          const std::string& body) {
  Program p = ParseProgram("method m(" + params + ")\n  ensures " + ensures +
                           "\n{\n" + body + "\n}\n");
  return {p, WpStmts(p.body, p.post)};
}

TEST(Wp, AssignmentExample) {
  Case c = Load("int x", "x > 5", "  x = x + 1;");
  EXPECT_EQ(ToString(c.wp), "x > 4");
}

TEST(Wp, Skip) {
  Program p = ParseProgram("method m(int x)\n  ensures x > 5\n{\n}\n");
  EXPECT_TRUE(Equal(WpStmt(Stmt::Skip(), p.post), p.post));
  EXPECT_TRUE(Equal(WpStmts({}, p.post), p.post));
}

TEST(Wp, AbsoluteValueIsTrue) {
  Case c = Load("int x", "x >= 0",
                "  if (x < 0) {\n    x = 0 - x;\n  } else {\n    skip;\n  }");
  EXPECT_TRUE(c.wp->is_true()) << ToString(c.wp);
  for (int x = -8; x <= 8; ++x) {
    State s;
    s.SetInt("x", x);
    ExecResult r = Interpret(c.p, s, 10);
    ASSERT_TRUE(r.ok());
    EXPECT_GE(r.state.Int("x"), 0);
  }
}

TEST(Wp, SegmentExamples) {
  Program p = ParseProgram(R"(method m(int n)
  ensures s == 0 && i == 0
{
  int i = 0;
  int s = 0;
  while (i < n) {
    i = i + 1;
  }
  int r = i;
}
)");
  SegmentedProgram sp = SegmentProgram(p);
  EXPECT_TRUE(WpSegment(sp.LoopFree(1), p.post)->is_true());
  std::map<std::string, Sort> scope = p.Scope();
  Formula q = ParseFormula("r == n", scope);
  EXPECT_EQ(ToString(WpSegment(sp.LoopFree(2), q)), "i == n");
  EXPECT_THROW(WpStmts(p.body, p.post), LoopEncounteredError);
}

TEST(Wp, EmptySegmentIsIdentity) {
  Segment empty;
  Formula q = Le(Var("i"), Var("n"));
  EXPECT_TRUE(Equal(WpSegment(empty, q), q));
}

TEST(Wp, ArrayStoreAddsBounds) {
  Case c = Load("int[] a, int i", "a[0] == 1", "  a[i] = 1;");
  State s;
  s.SetArray("a", {0, 0});
  s.SetInt("i", 0);
  EXPECT_TRUE(EvalFormula(c.wp, s));
  s.SetInt("i", 1);
  EXPECT_FALSE(EvalFormula(c.wp, s));
  s.SetInt("i", 2);
  EXPECT_FALSE(EvalFormula(c.wp, s));
}

TEST(Wp, DivisionAddsNonZero) {
  Case c = Load("int x, int y", "true", "  x = 10 / y;");
  State s;
  s.SetInt("x", 0);
  s.SetInt("y", 0);
  EXPECT_FALSE(EvalFormula(c.wp, s));
  s.SetInt("y", 3);
  EXPECT_TRUE(EvalFormula(c.wp, s));
}

TEST(Wp, NondetTakesBothBranches) {
  Case c = Load("int x", "x > 0",
                "  if (nondet()) {\n    x = x + 1;\n  } else {\n    x = x - 1;\n  }");
  State s;
  s.SetInt("x", 1);
  EXPECT_FALSE(EvalFormula(c.wp, s));
  s.SetInt("x", 2);
  EXPECT_TRUE(EvalFormula(c.wp, s));
}

TEST(Wp, SequenceLaw) {
  Program p = ParseProgram(R"(method m(int x, int y)
  ensures x < y
{
  x = x + y;
  y = x - y;
  x = x - y;
}
)");
  Formula whole = WpStmts(p.body, p.post);
  Formula folded = p.post;
  for (size_t i = p.body.size(); i-- > 0;) folded = WpStmt(p.body[i], folded);
  for (int x = -4; x <= 4; ++x) {
    for (int y = -4; y <= 4; ++y) {
      State s;
      s.SetInt("x", x);
      s.SetInt("y", y);
      EXPECT_EQ(EvalFormula(whole, s), EvalFormula(folded, s));
      EXPECT_EQ(EvalFormula(whole, s), y < x);
    }
  }
}

TEST(Wp, GhostStatementsAreAssignments) {
  Formula q = Eq(Var("w"), IntLit(3));
  Formula w = WpStmt(Stmt::GhostSet("w", Add(Var("x"), IntLit(1))), q);
  State s;
  s.SetInt("x", 2);
  EXPECT_TRUE(EvalFormula(w, s));
  s.SetInt("x", 3);
  EXPECT_FALSE(EvalFormula(w, s));
}

}  // namespace
}  // namespace invgen
