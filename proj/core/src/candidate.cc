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

#include <functional>

#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/logic.h"

namespace invgen {
namespace {

void CollectDeclared(const std::vector<Stmt>& stmts,
                     std::map<std::string, Sort>& scope) {
  for (const auto& s : stmts) {
    if (s.declares) scope[s.target] = Sort::kInt;
    CollectDeclared(s.then_body, scope);
    CollectDeclared(s.else_body, scope);
  }
}

void CheckNames(const Expr& e, const std::map<std::string, Sort>& scope,
                const std::string& what) {
  for (const auto& [name, sort] : FreeVarsSorted(e)) {
    auto it = scope.find(name);
    if (it == scope.end()) {
      throw TypeError(what + " mentions " + name + ", which is not in scope",
                      name);
    }
    if (it->second != sort) {
      throw TypeError(what + " uses " + name + " as " + SortName(sort), name);
    }
  }
}

}  // namespace

const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kTemplate:
      return "template";
    case Provenance::kLlm:
      return "llm";
    case Provenance::kRepair:
      return "repair";
  }
  return "?";
}

const char* ObligationName(Obligation o) {
  switch (o) {
    case Obligation::kImplication1:
      return "Implication1";
    case Obligation::kImplication2:
      return "Implication2";
    case Obligation::kInitialisation:
      return "Initialisation";
  }
  return "?";
}

Formula CandidateInvariant::Conjunction() const { return And(conjuncts); }

std::string CandidateInvariant::ToString() const {
  std::string out;
  for (size_t i = 0; i < conjuncts.size(); ++i) {
    if (i > 0) out += " && ";
    const Formula& c = conjuncts[i];
    bool wrap = c->kind() == Kind::kOr || c->kind() == Kind::kImplies;
    out += wrap ? "(" + invgen::ToString(c) + ")" : invgen::ToString(c);
  }
  return out.empty() ? "true" : out;
}

bool SameCandidate(const CandidateInvariant& a, const CandidateInvariant& b) {
  if (a.loop_id != b.loop_id) return false;
  if (!Equal(Simplify(a.Conjunction()), Simplify(b.Conjunction()))) {
    return false;
  }
  GhostAugmentation none;
  const GhostAugmentation& ga = a.ghost ? *a.ghost : none;
  const GhostAugmentation& gb = b.ghost ? *b.ghost : none;
  return StmtsEqual(ga.decls, gb.decls) && StmtsEqual(ga.sets, gb.sets);
}

std::map<std::string, Sort> ScopeAtLoop(const Program& p, int loop_id) {
  auto scope = p.ParamScope();
  for (const auto& s : p.body) {
    if (s.kind == Stmt::Kind::kWhile && s.loop_id == loop_id) return scope;
    if (s.declares) scope[s.target] = Sort::kInt;
    CollectDeclared(s.then_body, scope);
    CollectDeclared(s.else_body, scope);
  }
  throw Error("no top-level loop with id " + std::to_string(loop_id));
}

void CheckCandidate(const Program& p, const CandidateInvariant& c) {
  if (c.conjuncts.empty()) {
    throw TypeError("candidate for loop " + std::to_string(c.loop_id) +
                    " has no conjuncts");
  }
  auto scope = ScopeAtLoop(p, c.loop_id);
  if (c.ghost) {
    auto taken = p.Scope();
    for (const auto& d : c.ghost->decls) {
      if (d.kind != Stmt::Kind::kGhostDecl) {
        throw TypeError("ghost declarations must be ghost statements");
      }
      if (taken.count(d.target) || scope.count(d.target)) {
        throw TypeError("ghost variable " + d.target + " is not fresh",
                        d.target);
      }
      CheckNames(d.value, scope, "ghost initialiser");
      scope[d.target] = Sort::kInt;
    }
    auto body_scope = scope;
    const Stmt* loop = p.FindLoop(c.loop_id);
    if (loop) CollectDeclared(loop->then_body, body_scope);
    for (const auto& s : c.ghost->sets) {
      if (s.kind != Stmt::Kind::kGhostSet || !scope.count(s.target)) {
        throw TypeError("ghost update of undeclared " + s.target, s.target);
      }
      CheckNames(s.value, body_scope, "ghost update");
    }
  }
  for (const auto& f : c.conjuncts) {
    if (f->sort() != Sort::kBool) {
      throw TypeError("invariant conjunct " + invgen::ToString(f) +
                      " is not boolean");
    }
    CheckNames(f, scope, "invariant");
  }
}

Program Augment(const Program& p,
                const std::map<int, CandidateInvariant>& invariants) {
  Program out = p;
  out.body.clear();
  for (const auto& s : p.body) {
    if (s.kind != Stmt::Kind::kWhile) {
      out.body.push_back(s);
      continue;
    }
    auto it = invariants.find(s.loop_id);
    if (it == invariants.end() || !it->second.ghost) {
      out.body.push_back(s);
      continue;
    }
    const GhostAugmentation& g = *it->second.ghost;
    out.body.insert(out.body.end(), g.decls.begin(), g.decls.end());
    Stmt loop = s;
    loop.then_body.insert(loop.then_body.end(), g.sets.begin(), g.sets.end());
    out.body.push_back(std::move(loop));
  }
  return out;
}

GenerationContext MakeGenerationContext(
    std::shared_ptr<const SegmentedProgram> program, int loop_index,
    Formula loop_post, uint64_t seed) {
  if (!program || loop_index < 1 || loop_index > program->num_loops()) {
    throw Error("loop index " + std::to_string(loop_index) +
                " is out of range");
  }
  GenerationContext ctx;
  ctx.marker_view = RenderMarkers(*program);
  ctx.loop_index = loop_index;
  ctx.guard = program->Loop(loop_index).guard();
  ctx.loop_post = std::move(loop_post);
  ctx.pre = program->program.pre;
  ctx.seed = seed;
  ctx.program = std::move(program);
  return ctx;
}

}  // namespace invgen
