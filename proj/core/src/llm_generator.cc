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

#include <utility>

#include "invgen/error.h"
#include "invgen/llm.h"
#include "invgen/parser.h"
#include "invgen/prompts.h"
#include "invgen/solver.h"

namespace invgen {
namespace {

std::string ModelText(const State& s) {
  return s.ToString();
}

std::string FailureReason(const FailureDiagnostic& diag) {
  std::string reason = diag.explanation;
  if (diag.model) {
    if (!reason.empty()) reason += "\n";
    reason += "Counterexample state: " + ModelText(*diag.model);
  }
  if (reason.empty()) reason = "The checker could not establish the implication.";
  return reason;
}

std::string ImplicationTitle(Obligation o) {
  switch (o) {
    case Obligation::kImplication1:
      return "Implication 1 (I AND B => WP(loop_body, I))";
    case Obligation::kImplication2:
      return "Implication 2 (I AND NOT(B) => LoopPostCondition)";
    case Obligation::kInitialisation:
      return "Initialisation (the invariant must hold before the loop)";
  }
  return "";
}

}  // namespace

LlmGenerator::LlmGenerator(std::shared_ptr<LlmClient> client,
                           LlmGeneratorOptions options)
    : client_(std::move(client)), options_(options) {}

CandidateInvariant LlmGenerator::Parse(const GenerationContext& ctx,
                                       const std::string& reply,
                                       int attempt) const {
  const Program& p = ctx.program->program;
  auto extracted = ExtractInvariant(reply, ScopeAtLoop(p, ctx.loop_index));
  CandidateInvariant c;
  c.loop_id = ctx.loop_index;
  c.conjuncts = std::move(extracted.conjuncts);
  if (!extracted.ghost.empty()) c.ghost = std::move(extracted.ghost);
  c.provenance = Provenance::kLlm;
  c.attempt_index = attempt;
  try {
    CheckCandidate(p, c);
  } catch (const Error& e) {
    throw MalformedReply(std::string("reply invariant rejected: ") + e.what());
  }
  return c;
}

std::vector<CandidateInvariant> LlmGenerator::Generate(
    const GenerationContext& ctx) {
  PromptBindings b{
      {"segmented_program", ctx.marker_view},
      {"loop_index", std::to_string(ctx.loop_index)},
      {"loop_postcondition", ToString(ctx.loop_post)},
  };
  std::string reply = client_->Complete(RenderPrompt("gen", b));
  return {Parse(ctx, reply, 0)};
}

CandidateInvariant LlmGenerator::Refine(const GenerationContext& ctx,
                                        const CandidateInvariant& failed,
                                        const FailureDiagnostic& diag) {
  PromptBindings b{
      {"segmented_program", ctx.marker_view},
      {"loop_index", std::to_string(ctx.loop_index)},
      {"current_invariant", failed.ToString()},
      {"implication_name", ImplicationTitle(diag.obligation)},
      {"failure_reason", FailureReason(diag)},
      {"refinement_guidance", RefinementGuidance(diag.obligation)},
  };
  std::string reply = client_->Complete(RenderPrompt("refine", b));
  CandidateInvariant c = Parse(ctx, reply, failed.attempt_index + 1);
  if (SameCandidate(c, failed)) {
    throw RefinementStuck("model returned the failed invariant unchanged");
  }
  return c;
}

std::string LlmGenerator::AskImplication(const GenerationContext& ctx,
                                         const CandidateInvariant& candidate,
                                         Obligation which,
                                         const Formula& wp_body) {
  PromptBindings b{
      {"segmented_program", ctx.marker_view},
      {"loop_index", std::to_string(ctx.loop_index)},
      {"loop_invariant", candidate.ToString()},
      {"loop_guard", ToString(ctx.guard)},
      {"wp_loop_body", ToString(wp_body)},
      {"loop_postcondition", ToString(ctx.loop_post)},
  };
  return client_->Complete(
      RenderPrompt(which == Obligation::kImplication2 ? "imp2" : "imp1", b));
}

std::map<int, CandidateInvariant> InvariantsFromAnnotatedReply(
    const std::string& reply, const Program& p) {
  std::vector<std::string> texts;
  {
    bool open = false;
    std::string cur;
    size_t pos = 0;
    while (pos <= reply.size()) {
      size_t nl = reply.find('\n', pos);
      std::string line = reply.substr(pos, nl == std::string::npos
                                               ? std::string::npos
                                               : nl - pos);
      if (line.rfind("```", 0) == 0) {
        if (open) texts.push_back(cur);
        open = !open;
        cur.clear();
      } else if (open) {
        cur += line + "\n";
      }
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
  }
  texts.push_back(reply);
  for (auto it = texts.rbegin(); it != texts.rend(); ++it) {
    Program q;
    try {
      q = ParseProgram(*it);
    } catch (const Error&) {
      continue;
    }
    if (!SameCode(StripGhosts(q), StripGhosts(p)) || q.NumLoops() != p.NumLoops()) {
      continue;
    }
    std::map<int, CandidateInvariant> out;
    for (const auto& [loop_id, conjuncts] : q.annotations) {
      CandidateInvariant c;
      c.loop_id = loop_id;
      c.conjuncts = conjuncts;
      c.provenance = Provenance::kLlm;
      out[loop_id] = std::move(c);
    }
    // Ghost code sits directly before each loop and at the end of its body.
    for (size_t i = 0; i < q.body.size(); ++i) {
      const Stmt& s = q.body[i];
      if (s.kind != Stmt::Kind::kWhile || !out.count(s.loop_id)) continue;
      GhostAugmentation g;
      for (size_t j = i; j > 0 && q.body[j - 1].kind == Stmt::Kind::kGhostDecl;
           --j) {
        g.decls.insert(g.decls.begin(), q.body[j - 1]);
      }
      for (const auto& t : s.then_body) {
        if (t.kind == Stmt::Kind::kGhostSet) g.sets.push_back(t);
      }
      if (!g.empty()) out[s.loop_id].ghost = std::move(g);
    }
    return out;
  }
  throw MalformedReply("no parsable annotated program in reply");
}

std::map<int, CandidateInvariant> AdhocInvariants(LlmClient& client,
                                                  const Program& p) {
  return InvariantsFromAnnotatedReply(
      client.Complete(RenderPrompt("adhoc", {{"program", RenderProgram(p)}})),
      p);
}

}  // namespace invgen
