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

#include <random>

#include "invgen/error.h"
#include "invgen/logic.h"
#include "invgen/parser.h"

namespace invgen {
namespace {

const std::map<std::string, Sort> kScope{
    {"a", Sort::kArray}, {"i", Sort::kInt}, {"n", Sort::kInt},
    {"x", Sort::kInt},   {"y", Sort::kInt}};

Formula F(const std::string& text) { return ParseFormula(text, kScope); }

State RandomState(std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> v(-3, 3);
  std::uniform_int_distribution<int> len(0, 3);
  State s;
  for (const char* name : {"i", "n", "x", "y"}) s.SetInt(name, v(rng));
  std::vector<int64_t> elems(static_cast<size_t>(len(rng)));
  for (auto& e : elems) e = v(rng);
  s.SetArray("a", elems);
  return s;
}

bool SafeEval(const Formula& f, const State& s, bool* ok) {
  try {
    *ok = true;
    return EvalFormula(f, s);
  } catch (const EvalError&) {
    *ok = false;
    return false;
  }
}

TEST(Eval, Arithmetic) {
  State s;
  s.SetInt("x", 7);
  s.SetInt("y", -2);
  EXPECT_EQ(EvalInt(ParseTerm("x / y", kScope), s), -3);
  EXPECT_EQ(EvalInt(ParseTerm("x % y", kScope), s), 1);
  EXPECT_EQ(EvalInt(ParseTerm("-x * y + 1", kScope), s), 15);
}

TEST(Eval, BoundedQuantifiers) {
  State s;
  s.SetArray("a", {1, 2, 3});
  s.SetInt("n", 3);
  EXPECT_TRUE(EvalFormula(F("(\\forall int k; 0 <= k && k < n; a[k] > 0)"), s));
  EXPECT_FALSE(EvalFormula(F("(\\forall int k; 0 <= k && k < n; a[k] > 1)"), s));
  EXPECT_TRUE(EvalFormula(F("(\\exists int k; 0 <= k && k < n; a[k] == 3)"), s));
  EXPECT_FALSE(EvalFormula(F("(\\exists int k; 0 <= k && k < 0; a[k] == 3)"), s));
}

TEST(Eval, ShortCircuitGuardsReads) {
  State s;
  s.SetArray("a", {});
  s.SetInt("i", 0);
  EXPECT_FALSE(EvalFormula(F("i < a.length && a[i] == 0"), s));
  EXPECT_THROW(EvalFormula(F("a[i] == 0"), s), EvalError);
}

TEST(Eval, UnboundVariable) {
  State s;
  try {
    EvalFormula(F("x > 0"), s);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::kUnbound);
  }
}

TEST(Eval, OverflowIsReported) {
  State s;
  s.SetInt("x", std::numeric_limits<int64_t>::max());
  try {
    EvalInt(ParseTerm("x + 1", kScope), s);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalError::Kind::kOverflow);
  }
}

TEST(Substitute, AvoidsCapture) {
  Formula f = F("(\\forall int k; 0 <= k && k < n; a[k] <= x)");
  Formula g = Substitute(f, "x", Var("k"));
  EXPECT_TRUE(FreeVars(g).count("k"));
  State s;
  s.SetArray("a", {0, 5});
  s.SetInt("n", 2);
  s.SetInt("k", 5);
  EXPECT_TRUE(EvalFormula(g, s));
  s.SetInt("k", 4);
  EXPECT_FALSE(EvalFormula(g, s));
}

TEST(Substitute, Simultaneous) {
  Formula f = F("x < y");
  Formula g = SubstituteAll(f, {{"x", Var("y")}, {"y", Var("x")}});
  EXPECT_EQ(ToString(g), "y < x");
}

TEST(Substitute, ArrayStoreEliminatesStores) {
  Formula f = F("a[i] == x && a.length == n");
  Formula g = SubstituteArray(f, "a", Var("y"), IntLit(4));
  EXPECT_FALSE(ContainsKind(g, Kind::kStore));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    State s = RandomState(rng);
    auto& arr = std::get<ArrayValue>(s.vars["a"]);
    int64_t y = s.Int("y");
    bool ok1 = true, ok2 = true;
    bool lhs = SafeEval(g, s, &ok1);
    if (y < 0 || y >= arr.length()) continue;
    State after = s;
    std::get<ArrayValue>(after.vars["a"]).elems[static_cast<size_t>(y)] = 4;
    bool rhs = SafeEval(f, after, &ok2);
    if (ok1 && ok2) EXPECT_EQ(lhs, rhs) << s.ToString();
  }
}

TEST(Simplify, IdempotentAndEquivalent) {
  std::vector<std::string> texts = {
      "x + 0 <= y * 1 && true",
      "!(x < y) || false",
      "x == x && (y > 0 ==> y >= 1)",
      "(\\forall int k; 0 <= k && k < 0; a[k] == 1) && i <= n",
      "!(!(x > 2)) && 2 * 3 == 6",
      "x - x == 0 || y < y",
      "(x <= y && y <= x) ==> x == y",
      "i < n && i + 1 <= n",
  };
  std::mt19937_64 rng(7);
  for (const auto& t : texts) {
    Formula f = F(t);
    Formula s1 = Simplify(f);
    EXPECT_TRUE(Equal(Simplify(s1), s1)) << t;
    for (int k = 0; k < 300; ++k) {
      State s = RandomState(rng);
      bool ok1 = true, ok2 = true;
      bool a = SafeEval(f, s, &ok1);
      bool b = SafeEval(s1, s, &ok2);
      if (ok1 && ok2) EXPECT_EQ(a, b) << t << " at " << s.ToString();
    }
  }
}

TEST(Simplify, FoldsConstants) {
  EXPECT_TRUE(Simplify(F("1 + 1 == 2")) ->is_true());
  EXPECT_TRUE(Simplify(F("x < x"))->is_false());
}

TEST(Names, FreshName) {
  EXPECT_EQ(FreshName("k", {"i", "n"}), "k");
  EXPECT_EQ(FreshName("k", {"k", "k1"}), "k2");
}

TEST(Printing, QuantifierSyntax) {
  Formula f = Forall("k", IntLit(0), Var("n"),
                     Eq(Select(Var("a", Sort::kArray), Var("k")), IntLit(1)));
  EXPECT_EQ(ToString(f), "(\\forall int k; 0 <= k && k < n; a[k] == 1)");
  EXPECT_TRUE(AlphaEqual(
      f, Forall("j", IntLit(0), Var("n"),
                Eq(Select(Var("a", Sort::kArray), Var("j")), IntLit(1)))));
}

TEST(Printing, ParseInverse) {
  for (const char* t : {"x * (y + 1) == n", "-(x - y) < 3", "a[i + 1] != a.length",
                        "x == 1 ==> y == 2 ==> n == 3"}) {
    Formula f = F(t);
    EXPECT_TRUE(Equal(F(ToString(f)), f)) << t;
  }
}

TEST(Conjuncts, Flattening) {
  EXPECT_EQ(Conjuncts(F("x > 0 && y > 0 && n > 0")).size(), 3u);
  EXPECT_TRUE(Conjuncts(True()).empty());
}

TEST(Constructors, SortMismatchThrows) {
  EXPECT_THROW(Add(Var("a", Sort::kArray), IntLit(1)), TypeError);
  EXPECT_THROW(And(IntLit(1), True()), TypeError);
}

}  // namespace
}  // namespace invgen
