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
#include "invgen/generate.h"
#include "invgen/neural.h"
#include "invgen/parser.h"
#include "invgen/solver.h"
#include "test_support.h"

namespace invgen {
namespace {

using Type = TranscriptEvent::Type;

// Proposes `i <= n + k + 1` for growing k: never strong enough for the exit.
class WeakGenerator : public Generator {
 public:
  std::vector<CandidateInvariant> Generate(const GenerationContext& ctx) override {
    return {Make(ctx, 0)};
  }
  CandidateInvariant Refine(const GenerationContext& ctx, const CandidateInvariant& failed,
                            const FailureDiagnostic&) override {
    ++refines;
    return Make(ctx, failed.attempt_index + 1);
  }
  std::string name() const override { return "weak"; }
  int refines = 0;

 private:
  CandidateInvariant Make(const GenerationContext& ctx, int k) {
    CandidateInvariant c;
    c.loop_id = ctx.loop_index;
    c.attempt_index = k;
    c.conjuncts = {Le(Var("i"), Add(Var("n"), IntLit(k + 1)))};
    return c;
  }
};

ImplicationChecker Checker() {
  if (auto s = testing::MaybeSolver()) return SolverChecker(s);
  return BoundedChecker(3);
}

TEST(Neural, ReverseLoopOrder) {
  Program p = testing::LoadCorpusProgram("multi-loop/three_phase");
  TemplateGenerator gen;
  NeuralOutcome out = RunNeural(p, gen, Checker());
  EXPECT_TRUE(out.success);
  std::vector<int> starts;
  for (const auto& e : out.transcript.events) {
    if (e.type == Type::kLoopStart) starts.push_back(e.loop_id);
  }
  EXPECT_EQ(starts, (std::vector<int>{3, 2, 1}));
  ASSERT_EQ(out.invariants.size(), 3u);
  ASSERT_TRUE(out.precondition_entailment.has_value());
  EXPECT_EQ(out.transcript.events.back().type, Type::kPrecondition);
}

TEST(Neural, Implication2OnlyAfterImplication1Holds) {
  Program p = testing::LoadCorpusProgram("multi-loop/pipeline");
  TemplateGenerator gen;
  NeuralOutcome out = RunNeuralNoThrow(p, gen, Checker());
  const auto& ev = out.transcript.events;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].type != Type::kCheck || ev[i].obligation != "Implication2") continue;
    ASSERT_GT(i, 0u);
    EXPECT_EQ(ev[i - 1].obligation, "Implication1");
    EXPECT_EQ(ev[i - 1].attempt, ev[i].attempt);
    EXPECT_TRUE(ev[i - 1].verdict.rfind("Valid", 0) == 0 ||
                ev[i - 1].verdict.rfind("BoundedValid", 0) == 0);
  }
}

TEST(Neural, RefinementBudget) {
  Program q = ParseProgram(R"(method m(int n)
  requires n >= 0
  ensures i == n
{
  int i = 0;
  while (i < n) {
    i = i + 1;
  }
}
)");
  WeakGenerator gen;
  NeuralConfig cfg;
  cfg.max_refinement = 3;
  try {
    RunNeural(q, gen, BoundedChecker(3), cfg);
    FAIL() << "expected RefinementExhausted";
  } catch (const RefinementExhausted& e) {
    EXPECT_EQ(e.loop_id(), 1);
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_EQ(e.partial().refinement_count, 2);
    EXPECT_EQ(e.partial().implication2_failures, 3);
    EXPECT_EQ(e.partial().transcript.events.back().type, Type::kExhausted);
  }
  EXPECT_EQ(gen.refines, 2);
  NeuralOutcome out = RunNeuralNoThrow(q, gen, BoundedChecker(3), cfg);
  EXPECT_FALSE(out.success);
  EXPECT_EQ(out.failed_loop, 1);
  EXPECT_EQ(out.failed_attempts, 3);
}

TEST(Neural, LoopFreeMethod) {
  Program p = ParseProgram(R"(method m(int x)
  requires x > 4
  ensures y > 5
{
  int y = x + 1;
}
)");
  TemplateGenerator gen;
  NeuralOutcome out = RunNeural(p, gen, BoundedChecker(4));
  EXPECT_TRUE(out.success);
  EXPECT_TRUE(out.invariants.empty());
  ASSERT_TRUE(out.precondition_entailment.has_value());
  EXPECT_TRUE(out.precondition_entailment->valid());
  EXPECT_EQ(out.transcript.events.front().type, Type::kSegmentWp);
}

TEST(Neural, PreconditionIsNonBlocking) {
  Program p = testing::LoadCorpusProgram("single-loop/approach");
  TemplateGenerator gen;
  NeuralOutcome out = RunNeural(p, gen, Checker());
  EXPECT_TRUE(out.success);
  ASSERT_TRUE(out.precondition_entailment.has_value());
  EXPECT_TRUE(out.precondition_entailment->invalid());
}

TEST(Neural, TranscriptJson) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  TemplateGenerator gen;
  NeuralOutcome out = RunNeural(p, gen, Checker());
  std::string json = out.transcript.ToJson();
  EXPECT_NE(json.find("\"loop_start\""), std::string::npos);
  EXPECT_NE(json.find("\"seq\""), std::string::npos);
  EXPECT_EQ(json, out.transcript.ToJson());
}

TEST(Neural, NestedLoopRejected) {
  Program p = ParseProgram(R"(method m(int n)
{
  while (n > 0) {
    while (n > 1) {
      n = n - 1;
    }
    n = n - 1;
  }
}
)");
  TemplateGenerator gen;
  EXPECT_THROW(RunNeural(p, gen, BoundedChecker(2)), NestedLoopError);
}

}  // namespace
}  // namespace invgen
