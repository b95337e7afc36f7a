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

#include <algorithm>
#include <set>

#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/logic.h"
#include "invgen/parser.h"
#include "invgen/solver.h"
#include "invgen/wp.h"
#include "test_support.h"

namespace invgen {
namespace {

std::set<std::string> Texts(const CandidateInvariant& c) {
  std::set<std::string> out;
  for (const auto& f : c.conjuncts) out.insert(ToString(Simplify(f)));
  return out;
}

std::set<std::string> Texts(const Program& p, std::vector<std::string> raw) {
  std::set<std::string> out;
  for (const auto& t : raw) out.insert(ToString(Simplify(ParseFormula(t, p.Scope()))));
  return out;
}

GenerationContext ContextFor(const Program& p, int loop, uint64_t seed = 0) {
  auto sp = std::make_shared<SegmentedProgram>(SegmentProgram(p));
  Formula post = WpSegment(sp->LoopFree(loop + 1), p.post);
  return MakeGenerationContext(sp, loop, post, seed);
}

bool Contains(const std::vector<CandidateInvariant>& cs,
              const std::set<std::string>& want) {
  return std::any_of(cs.begin(), cs.end(),
                     [&](const CandidateInvariant& c) { return Texts(c) == want; });
}

// Initialisation, preservation and exit of a single-loop method whose
// loop-free prefix is the first segment.
bool Inductive(const GenerationContext& ctx, const Formula& inv, int bound) {
  const SegmentedProgram& sp = *ctx.program;
  Formula guard = ctx.guard;
  Formula init = WpSegment(sp.LoopFree(ctx.loop_index), inv);
  Formula wp = WpStmts(sp.Loop(ctx.loop_index).body(), inv);
  return BoundedCheck(ctx.pre, init, bound).valid() &&
         BoundedCheck(And(inv, guard), wp, bound).valid() &&
         BoundedCheck(And(inv, Not(guard)), ctx.loop_post, bound).valid();
}

TEST(Context, DerivedFields) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  GenerationContext ctx = ContextFor(p, 1);
  EXPECT_EQ(ToString(ctx.guard), "i < n");
  EXPECT_EQ(ToString(ctx.pre), "n >= 0");
  EXPECT_NE(ctx.marker_view.find("// while 1 open"), std::string::npos);
  auto sp = ctx.program;
  EXPECT_THROW(MakeGenerationContext(sp, 2, True()), Error);
}

TEST(Template, SumCandidate) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  GenerationContext ctx = ContextFor(p, 1);
  TemplateGenerator gen;
  auto cands = gen.Generate(ctx);
  auto want = Texts(p, {"0 <= i", "i <= n", "s * 2 == i * (i - 1)"});
  ASSERT_TRUE(Contains(cands, want));
  Formula inv = ParseFormula("0 <= i && i <= n && s * 2 == i * (i - 1)", p.Scope());
  EXPECT_TRUE(Inductive(ctx, inv, 6));
}

TEST(Template, CopyRangeSplit) {
  Program p = testing::LoadCorpusProgram("array-forall/copy");
  GenerationContext ctx = ContextFor(p, 1);
  TemplateGenerator gen;
  auto cands = gen.Generate(ctx);
  bool found = std::any_of(cands.begin(), cands.end(), [&](const CandidateInvariant& c) {
    auto t = Texts(c);
    bool has_forall = std::any_of(t.begin(), t.end(), [](const std::string& s) {
      return s.find("\\forall") != std::string::npos &&
             s.find("k < i") != std::string::npos &&
             s.find("b[k] == a[k]") != std::string::npos;
    });
    return has_forall && t.count("0 <= i") && t.count("i <= n");
  });
  EXPECT_TRUE(found);
  auto solver = testing::MaybeSolver();
  if (!solver) GTEST_SKIP() << "no SMT solver available";
  Formula inv = ParseFormula(
      "0 <= i && i <= n && n <= a.length && n <= b.length && "
      "(\\forall int k; 0 <= k && k < i; b[k] == a[k])",
      p.Scope());
  const SegmentedProgram& sp = *ctx.program;
  EXPECT_TRUE(solver->CheckImplication(ctx.pre, WpSegment(sp.LoopFree(1), inv)).valid());
  EXPECT_TRUE(solver->CheckImplication(And(inv, ctx.guard),
                                       WpStmts(sp.Loop(1).body(), inv)).valid());
  EXPECT_TRUE(solver->CheckImplication(And(inv, Not(ctx.guard)), ctx.loop_post).valid());
}

TEST(Template, FalseGuardRanksPostFirst) {
  Program p = ParseProgram(R"(method m(int n)
  requires n >= 3
  ensures n >= 1
{
  while (false) {
    n = n - 1;
  }
}
)");
  GenerationContext ctx = ContextFor(p, 1);
  TemplateGenerator gen;
  auto cands = gen.Generate(ctx);
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(Texts(cands.front()), Texts(p, {"n >= 1"}));
}

TEST(Template, Deterministic) {
  Program p = testing::LoadCorpusProgram("multi-loop/two_counters_seq");
  GenerationContext ctx = ContextFor(p, 2, 11);
  TemplateGenerator g1, g2;
  auto a = g1.Generate(ctx);
  auto b = g2.Generate(ctx);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].ToString(), b[i].ToString());
  EXPECT_EQ(g1.Atoms(ctx), g2.Atoms(ctx));
}

TEST(Template, OrderedBySize) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  TemplateGenerator gen;
  auto cands = gen.Generate(ContextFor(p, 1));
  for (size_t i = 1; i < cands.size(); ++i) {
    EXPECT_LE(cands[i - 1].conjuncts.size(), cands[i].conjuncts.size());
  }
}

TEST(Template, CandidatesTypeCheck) {
  for (const char* id : {"single-loop/sum", "array-forall/copy", "array-exists/max_witness",
                         "multi-loop/pipeline"}) {
    Program p = testing::LoadCorpusProgram(id);
    TemplateGenerator gen;
    for (int loop = 1; loop <= p.NumLoops(); ++loop) {
      for (const auto& c : gen.Generate(ContextFor(p, loop))) {
        EXPECT_NO_THROW(CheckCandidate(p, c)) << id << " " << c.ToString();
        EXPECT_EQ(c.loop_id, loop);
        EXPECT_EQ(c.provenance, Provenance::kTemplate);
      }
    }
  }
}

TEST(Template, RefineSumAfterImplication2) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  GenerationContext ctx = ContextFor(p, 1);
  CandidateInvariant failed;
  failed.loop_id = 1;
  failed.conjuncts = {ParseFormula("s * 2 == i * (i - 1)", p.Scope())};
  FailureDiagnostic diag;
  diag.obligation = Obligation::kImplication2;
  State model;
  model.SetInt("i", 3);
  model.SetInt("n", 2);
  model.SetInt("s", 3);
  diag.model = model;
  TemplateGenerator gen;
  CandidateInvariant refined = gen.Refine(ctx, failed, diag);
  EXPECT_FALSE(SameCandidate(refined, failed));
  EXPECT_GT(refined.attempt_index, failed.attempt_index);
  // The exit counterexample is excluded.
  EXPECT_FALSE(EvalFormula(refined.Conjunction(), model));
  EXPECT_TRUE(Inductive(ctx, refined.Conjunction(), 5)) << refined.ToString();
}

TEST(Template, RefineExcludesPreservationModel) {
  Program p = testing::LoadCorpusProgram("array-forall/copy");
  GenerationContext ctx = ContextFor(p, 1);
  TemplateGenerator gen;
  CandidateInvariant failed = gen.Generate(ctx).front();
  const SegmentedProgram& sp = *ctx.program;
  Formula wp = WpStmts(sp.Loop(1).body(), failed.Conjunction());
  CheckVerdict v = BoundedCheck(And(failed.Conjunction(), ctx.guard), wp, 2);
  if (!v.invalid()) GTEST_SKIP() << "first candidate already preserved";
  FailureDiagnostic diag{Obligation::kImplication1, "", v.model, wp};
  CandidateInvariant refined = gen.Refine(ctx, failed, diag);
  EXPECT_FALSE(SameCandidate(refined, failed));
  Formula rwp = WpStmts(sp.Loop(1).body(), refined.Conjunction());
  bool holds = EvalFormula(refined.Conjunction(), v.model);
  bool preserved = true;
  try {
    preserved = EvalFormula(rwp, v.model);
  } catch (const Error&) {
    preserved = false;
  }
  EXPECT_TRUE(!holds || preserved);
}

TEST(Template, RefineNeverRepeats) {
  Program p = testing::LoadCorpusProgram("single-loop/approach");
  GenerationContext ctx = ContextFor(p, 1);
  TemplateGenerator gen;
  CandidateInvariant cur = gen.Generate(ctx).front();
  std::vector<std::string> seen{cur.ToString()};
  for (int round = 0; round < 4; ++round) {
    FailureDiagnostic diag{Obligation::kImplication1, "synthetic", std::nullopt, True()};
    ctx.failures.push_back({cur, diag});
    try {
      cur = gen.Refine(ctx, cur, diag);
    } catch (const RefinementStuck&) {
      break;
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), cur.ToString()), 0);
    seen.push_back(cur.ToString());
  }
}

TEST(Candidate, CheckRejectsOutOfScope) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  CandidateInvariant c;
  c.loop_id = 1;
  EXPECT_THROW(CheckCandidate(p, c), TypeError);
  c.conjuncts = {Le(Var("zz"), Var("n"))};
  EXPECT_THROW(CheckCandidate(p, c), TypeError);
  c.conjuncts = {Le(Var("i"), Var("n"))};
  EXPECT_NO_THROW(CheckCandidate(p, c));
}

TEST(Candidate, GhostAugment) {
  Program p = testing::LoadCorpusProgram("array-exists/max_witness");
  CandidateInvariant c;
  c.loop_id = 1;
  c.conjuncts = {Le(IntLit(0), Var("w"))};
  GhostAugmentation g;
  g.decls.push_back(Stmt::GhostDecl("w", IntLit(0)));
  g.sets.push_back(Stmt::GhostSet("w", IntLit(0)));
  c.ghost = g;
  EXPECT_NO_THROW(CheckCandidate(p, c));
  Program q = Augment(p, {{1, c}});
  EXPECT_EQ(q.Ghosts(), (std::vector<std::string>{"w"}));
  EXPECT_TRUE(SameCode(p, q));
  EXPECT_EQ(ScopeAtLoop(q, 1).count("w"), 1u);
}

}  // namespace
}  // namespace invgen
