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

#include "invgen/wp.h"

#include "invgen/error.h"
#include "invgen/logic.h"

namespace invgen {
namespace {

Formula Safe(const Expr& e) {
  switch (e->kind()) {
    case Kind::kAnd: {
      // Later operands only run when the earlier ones held.
      Formula acc = True();
      for (auto it = e->args().rbegin(); it != e->args().rend(); ++it) {
        acc = acc->is_true() ? Safe(*it)
                             : And(Safe(*it), Implies(*it, acc));
      }
      return acc;
    }
    case Kind::kOr: {
      Formula acc = True();
      for (auto it = e->args().rbegin(); it != e->args().rend(); ++it) {
        acc = acc->is_true() ? Safe(*it)
                             : And(Safe(*it), Implies(Not(*it), acc));
      }
      return acc;
    }
    case Kind::kImplies:
      return And(Safe(e->arg(0)), Implies(e->arg(0), Safe(e->arg(1))));
    case Kind::kDiv:
    case Kind::kMod:
      return And({Safe(e->arg(0)), Safe(e->arg(1)), Ne(e->arg(1), IntLit(0))});
    case Kind::kSelect:
      return And({Safe(e->arg(1)), Le(IntLit(0), e->arg(1)),
                  Lt(e->arg(1), Length(e->arg(0)))});
    case Kind::kForall:
    case Kind::kExists:
      throw TypeError("quantifier in program code");
    default: {
      std::vector<Formula> parts;
      for (const auto& a : e->args()) parts.push_back(Safe(a));
      return And(parts);
    }
  }
}

Formula WpRaw(const Stmt& s, const Formula& q);

Formula WpSeqRaw(const std::vector<Stmt>& stmts, const Formula& q) {
  Formula acc = q;
  for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
    acc = Simplify(WpRaw(*it, acc));
  }
  return acc;
}

Formula WpRaw(const Stmt& s, const Formula& q) {
  switch (s.kind) {
    case Stmt::Kind::kSkip:
      return q;
    case Stmt::Kind::kAssign:
    case Stmt::Kind::kGhostDecl:
    case Stmt::Kind::kGhostSet:
      return And(Safe(s.value), Substitute(q, s.target, s.value));
    case Stmt::Kind::kStore:
      return And({Safe(s.index), Safe(s.value), Le(IntLit(0), s.index),
                  Lt(s.index, Length(Var(s.target, Sort::kArray))),
                  SubstituteArray(q, s.target, s.index, s.value)});
    case Stmt::Kind::kIf: {
      Formula w1 = WpSeqRaw(s.then_body, q);
      Formula w2 = WpSeqRaw(s.else_body, q);
      if (s.guard->kind() == Kind::kNondet) return And(w1, w2);
      return And({Safe(s.guard), Implies(s.guard, w1),
                  Implies(Not(s.guard), w2)});
    }
    case Stmt::Kind::kWhile:
      throw LoopEncounteredError("loop " + std::to_string(s.loop_id) +
                                 " reached by the loop-free WP calculus");
  }
  return q;
}

}  // namespace

Formula SafeCondition(const Expr& e) { return Simplify(Safe(e)); }

Formula WpStmt(const Stmt& s, const Formula& q) {
  return Simplify(WpRaw(s, q));
}

Formula WpStmts(const std::vector<Stmt>& stmts, const Formula& q) {
  return Simplify(WpSeqRaw(stmts, q));
}

Formula WpSegment(const Segment& seg, const Formula& q) {
  if (seg.is_loop()) {
    throw LoopEncounteredError("segment while " + std::to_string(seg.index) +
                               " is a loop");
  }
  return WpStmts(seg.stmts, q);
}

}  // namespace invgen
