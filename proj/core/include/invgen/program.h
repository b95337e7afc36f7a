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

// MiniImp abstract syntax: statements, methods, and loop annotations.

#ifndef INVGEN_PROGRAM_H_
#define INVGEN_PROGRAM_H_

#include <map>
#include <string>
#include <vector>

#include "invgen/error.h"
#include "invgen/expr.h"

namespace invgen {

struct Stmt {
  enum class Kind {
    kSkip,
    kAssign,     // target = value (declares: `int target = value`)
    kStore,      // target[index] = value
    kIf,         // guard, then_body, else_body
    kWhile,      // guard, then_body (the loop body), loop_id
    kGhostDecl,  // //@ ghost int target = value;
    kGhostSet,   // //@ set target = value;
  };

  Kind kind = Kind::kSkip;
  std::string target;
  Expr index;
  Expr value;
  Expr guard;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  bool declares = false;
  bool has_else = false;
  int loop_id = 0;
  SourceLoc loc;

  static Stmt Skip();
  static Stmt Assign(std::string target, Expr value, bool declares = false);
  static Stmt Store(std::string array, Expr index, Expr value);
  static Stmt If(Expr guard, std::vector<Stmt> then_body,
                 std::vector<Stmt> else_body = {});
  static Stmt While(Expr guard, std::vector<Stmt> body, int loop_id);
  static Stmt GhostDecl(std::string name, Expr init);
  static Stmt GhostSet(std::string name, Expr value);

  bool is_ghost() const {
    return kind == Kind::kGhostDecl || kind == Kind::kGhostSet;
  }
};

// Structural equality, ignoring source locations.
bool StmtEqual(const Stmt& a, const Stmt& b);
bool StmtsEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

struct Param {
  std::string name;
  Sort sort = Sort::kInt;
};

// loop_id -> invariant conjuncts, one `//@ loop_invariant` line each.
using Annotations = std::map<int, std::vector<Formula>>;

struct Program {
  std::string name;
  std::vector<Param> params;
  Formula pre = True();
  Formula post = True();
  std::vector<Stmt> body;
  // Invariants written in the source text, if any.
  Annotations annotations;

  int NumLoops() const;
  // Sorted environment of every declared name: params, locals and ghosts.
  std::map<std::string, Sort> Scope() const;
  std::map<std::string, Sort> ParamScope() const;
  std::vector<std::string> Locals() const;
  std::vector<std::string> Ghosts() const;
  // Ghost declaration statements, in source order.
  std::vector<Stmt> GhostDecls() const;
  // Guards of every while loop, indexed by loop_id - 1.
  std::vector<Expr> LoopGuards() const;
  const Stmt* FindLoop(int loop_id) const;
};

// Same method with every ghost statement removed.
Program StripGhosts(const Program& p);
// Pre, post, params and ghost-free body agree.
bool SameCode(const Program& a, const Program& b);

// Renders MiniImp source. The first overload uses `p.annotations`.
std::string RenderProgram(const Program& p);
std::string RenderProgram(const Program& p, const Annotations& annotations);
std::string RenderProgram(const Program& p,
                          const std::map<int, Formula>& annotations);
// Statements only, each line prefixed by `indent` spaces.
std::string RenderStmts(const std::vector<Stmt>& stmts, int indent,
                        const Annotations* annotations = nullptr);
std::string RenderHeader(const Program& p);

// Names assigned (scalars) or stored into (arrays) anywhere in `stmts`.
std::vector<std::string> ModifiedVars(const std::vector<Stmt>& stmts);

}  // namespace invgen

#endif  // INVGEN_PROGRAM_H_
