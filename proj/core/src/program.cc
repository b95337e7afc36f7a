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

#include "invgen/program.h"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

namespace invgen {

Stmt Stmt::Skip() { return Stmt{}; }

Stmt Stmt::Assign(std::string target, Expr value, bool declares) {
  Stmt s;
  s.kind = Kind::kAssign;
  s.target = std::move(target);
  s.value = std::move(value);
  s.declares = declares;
  return s;
}

Stmt Stmt::Store(std::string array, Expr index, Expr value) {
  Stmt s;
  s.kind = Kind::kStore;
  s.target = std::move(array);
  s.index = std::move(index);
  s.value = std::move(value);
  return s;
}

Stmt Stmt::If(Expr guard, std::vector<Stmt> then_body,
              std::vector<Stmt> else_body) {
  Stmt s;
  s.kind = Kind::kIf;
  s.guard = std::move(guard);
  s.then_body = std::move(then_body);
  s.has_else = !else_body.empty();
  s.else_body = std::move(else_body);
  return s;
}

Stmt Stmt::While(Expr guard, std::vector<Stmt> body, int loop_id) {
  Stmt s;
  s.kind = Kind::kWhile;
  s.guard = std::move(guard);
  s.then_body = std::move(body);
  s.loop_id = loop_id;
  return s;
}

Stmt Stmt::GhostDecl(std::string name, Expr init) {
  Stmt s;
  s.kind = Kind::kGhostDecl;
  s.target = std::move(name);
  s.value = std::move(init);
  s.declares = true;
  return s;
}

Stmt Stmt::GhostSet(std::string name, Expr value) {
  Stmt s;
  s.kind = Kind::kGhostSet;
  s.target = std::move(name);
  s.value = std::move(value);
  return s;
}

namespace {

bool OptEqual(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  return Equal(a, b);
}

void Walk(const std::vector<Stmt>& stmts,
          const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : stmts) {
    fn(s);
    Walk(s.then_body, fn);
    Walk(s.else_body, fn);
  }
}

std::vector<Stmt> StripGhostStmts(const std::vector<Stmt>& stmts) {
  std::vector<Stmt> out;
  for (const auto& s : stmts) {
    if (s.is_ghost()) continue;
    Stmt copy = s;
    copy.then_body = StripGhostStmts(s.then_body);
    copy.else_body = StripGhostStmts(s.else_body);
    out.push_back(std::move(copy));
  }
  return out;
}

void Indent(std::string& out, int n) { out.append(static_cast<size_t>(n), ' '); }

void RenderInvariantLines(const Annotations* annotations, int loop_id,
                          int indent, std::string& out) {
  if (!annotations) return;
  auto it = annotations->find(loop_id);
  if (it == annotations->end()) return;
  if (it->second.empty()) {
    Indent(out, indent);
    out += "//@ loop_invariant true;\n";
    return;
  }
  for (const auto& f : it->second) {
    Indent(out, indent);
    out += "//@ loop_invariant " + ToString(f) + ";\n";
  }
}

void RenderStmt(const Stmt& s, int indent, const Annotations* annotations,
                std::string& out) {
  switch (s.kind) {
    case Stmt::Kind::kSkip:
      Indent(out, indent);
      out += "skip;\n";
      return;
    case Stmt::Kind::kAssign:
      Indent(out, indent);
      if (s.declares) out += "int ";
      out += s.target + " = " + ToString(s.value) + ";\n";
      return;
    case Stmt::Kind::kStore:
      Indent(out, indent);
      out += s.target + "[" + ToString(s.index) + "] = " + ToString(s.value) +
             ";\n";
      return;
    case Stmt::Kind::kGhostDecl:
      Indent(out, indent);
      out += "//@ ghost int " + s.target + " = " + ToString(s.value) + ";\n";
      return;
    case Stmt::Kind::kGhostSet:
      Indent(out, indent);
      out += "//@ set " + s.target + " = " + ToString(s.value) + ";\n";
      return;
    case Stmt::Kind::kIf:
      Indent(out, indent);
      out += "if (" + ToString(s.guard) + ") {\n";
      out += RenderStmts(s.then_body, indent + 2, annotations);
      Indent(out, indent);
      if (s.has_else) {
        out += "} else {\n";
        out += RenderStmts(s.else_body, indent + 2, annotations);
        Indent(out, indent);
      }
      out += "}\n";
      return;
    case Stmt::Kind::kWhile:
      RenderInvariantLines(annotations, s.loop_id, indent, out);
      Indent(out, indent);
      out += "while (" + ToString(s.guard) + ") {\n";
      out += RenderStmts(s.then_body, indent + 2, annotations);
      Indent(out, indent);
      out += "}\n";
      return;
  }
}

}  // namespace

bool StmtEqual(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.target == b.target &&
         OptEqual(a.index, b.index) && OptEqual(a.value, b.value) &&
         OptEqual(a.guard, b.guard) && a.declares == b.declares &&
         a.has_else == b.has_else && a.loop_id == b.loop_id &&
         StmtsEqual(a.then_body, b.then_body) &&
         StmtsEqual(a.else_body, b.else_body);
}

bool StmtsEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!StmtEqual(a[i], b[i])) return false;
  }
  return true;
}

int Program::NumLoops() const {
  int n = 0;
  Walk(body, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kWhile) ++n;
  });
  return n;
}

std::map<std::string, Sort> Program::ParamScope() const {
  std::map<std::string, Sort> scope;
  for (const auto& p : params) scope[p.name] = p.sort;
  return scope;
}

std::map<std::string, Sort> Program::Scope() const {
  auto scope = ParamScope();
  Walk(body, [&](const Stmt& s) {
    if (s.declares) scope[s.target] = Sort::kInt;
  });
  return scope;
}

std::vector<std::string> Program::Locals() const {
  std::vector<std::string> out;
  Walk(body, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kAssign && s.declares) out.push_back(s.target);
  });
  return out;
}

std::vector<std::string> Program::Ghosts() const {
  std::vector<std::string> out;
  Walk(body, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kGhostDecl) out.push_back(s.target);
  });
  return out;
}

std::vector<Stmt> Program::GhostDecls() const {
  std::vector<Stmt> out;
  Walk(body, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kGhostDecl) out.push_back(s);
  });
  return out;
}

std::vector<Expr> Program::LoopGuards() const {
  std::vector<std::pair<int, Expr>> loops;
  Walk(body, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kWhile) loops.emplace_back(s.loop_id, s.guard);
  });
  std::sort(loops.begin(), loops.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Expr> out;
  for (auto& [id, g] : loops) out.push_back(g);
  return out;
}

const Stmt* Program::FindLoop(int loop_id) const {
  const Stmt* found = nullptr;
  std::function<void(const std::vector<Stmt>&)> rec =
      [&](const std::vector<Stmt>& stmts) {
        for (const auto& s : stmts) {
          if (found) return;
          if (s.kind == Stmt::Kind::kWhile && s.loop_id == loop_id) {
            found = &s;
            return;
          }
          rec(s.then_body);
          rec(s.else_body);
        }
      };
  rec(body);
  return found;
}

Program StripGhosts(const Program& p) {
  Program out = p;
  out.body = StripGhostStmts(p.body);
  return out;
}

bool SameCode(const Program& a, const Program& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name ||
        a.params[i].sort != b.params[i].sort) {
      return false;
    }
  }
  return Equal(a.pre, b.pre) && Equal(a.post, b.post) &&
         StmtsEqual(StripGhostStmts(a.body), StripGhostStmts(b.body));
}

std::string RenderStmts(const std::vector<Stmt>& stmts, int indent,
                        const Annotations* annotations) {
  std::string out;
  for (const auto& s : stmts) RenderStmt(s, indent, annotations, out);
  return out;
}

std::string RenderHeader(const Program& p) {
  std::string out = "method " + p.name + "(";
  for (size_t i = 0; i < p.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += p.params[i].sort == Sort::kArray ? "int[] " : "int ";
    out += p.params[i].name;
  }
  out += ")\n";
  if (!p.pre->is_true()) out += "  requires " + ToString(p.pre) + ";\n";
  if (!p.post->is_true()) out += "  ensures " + ToString(p.post) + ";\n";
  return out;
}

std::string RenderProgram(const Program& p) {
  return RenderProgram(p, p.annotations);
}

std::string RenderProgram(const Program& p, const Annotations& annotations) {
  const int loops = p.NumLoops();
  for (const auto& [id, conjuncts] : annotations) {
    if (id < 1 || id > loops) {
      throw Error("annotation references unknown loop_id " +
                  std::to_string(id));
    }
  }
  std::string out = RenderHeader(p);
  out += "{\n";
  out += RenderStmts(p.body, 2, &annotations);
  out += "}\n";
  return out;
}

std::string RenderProgram(const Program& p,
                          const std::map<int, Formula>& annotations) {
  Annotations split;
  for (const auto& [id, f] : annotations) split[id] = Conjuncts(f);
  return RenderProgram(p, split);
}

std::vector<std::string> ModifiedVars(const std::vector<Stmt>& stmts) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  Walk(stmts, [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::kAssign || s.kind == Stmt::Kind::kStore ||
        s.kind == Stmt::Kind::kGhostDecl || s.kind == Stmt::Kind::kGhostSet) {
      if (seen.insert(s.target).second) out.push_back(s.target);
    }
  });
  return out;
}

}  // namespace invgen
