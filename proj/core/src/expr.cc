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

#include "invgen/expr.h"

#include <map>
#include <utility>

#include "invgen/error.h"

namespace invgen {

const char* SortName(Sort sort) {
  switch (sort) {
    case Sort::kInt:
      return "int";
    case Sort::kBool:
      return "boolean";
    case Sort::kArray:
      return "int[]";
  }
  return "?";
}

bool Node::is_comparison() const {
  switch (kind_) {
    case Kind::kEq:
    case Kind::kNe:
    case Kind::kLt:
    case Kind::kLe:
    case Kind::kGt:
    case Kind::kGe:
      return true;
    default:
      return false;
  }
}

bool Node::is_arith() const {
  switch (kind_) {
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv:
    case Kind::kMod:
      return true;
    default:
      return false;
  }
}

namespace {

Expr Make(Kind kind, Sort sort, int64_t value, std::string name,
          std::vector<Expr> args) {
  return std::make_shared<const Node>(kind, sort, value, std::move(name),
                                      std::move(args));
}

void Expect(const Expr& e, Sort sort, const char* context) {
  if (!e) throw TypeError(std::string("missing operand in ") + context);
  if (e->sort() != sort) {
    throw TypeError(std::string(context) + " expects " + SortName(sort) +
                        " operand, got " + SortName(e->sort()) + " `" +
                        ToString(e) + "`",
                    e->kind() == Kind::kVar ? e->name() : "");
  }
}

}  // namespace

Expr IntLit(int64_t v) { return Make(Kind::kIntLit, Sort::kInt, v, "", {}); }

Expr BoolLit(bool v) {
  return Make(Kind::kBoolLit, Sort::kBool, v ? 1 : 0, "", {});
}

Expr True() {
  static const Expr kTrue = BoolLit(true);
  return kTrue;
}

Expr False() {
  static const Expr kFalse = BoolLit(false);
  return kFalse;
}

Expr Var(const std::string& name, Sort sort) {
  return Make(Kind::kVar, sort, 0, name, {});
}

Expr Select(Expr array, Expr index) {
  Expect(array, Sort::kArray, "array read");
  Expect(index, Sort::kInt, "array index");
  return Make(Kind::kSelect, Sort::kInt, 0, "",
              {std::move(array), std::move(index)});
}

Expr Store(Expr array, Expr index, Expr value) {
  Expect(array, Sort::kArray, "array store");
  Expect(index, Sort::kInt, "array index");
  Expect(value, Sort::kInt, "stored value");
  return Make(Kind::kStore, Sort::kArray, 0, "",
              {std::move(array), std::move(index), std::move(value)});
}

Expr Length(Expr array) {
  Expect(array, Sort::kArray, ".length");
  return Make(Kind::kLength, Sort::kInt, 0, "", {std::move(array)});
}

Expr Neg(Expr a) {
  Expect(a, Sort::kInt, "unary minus");
  return Make(Kind::kNeg, Sort::kInt, 0, "", {std::move(a)});
}

Expr Arith(Kind kind, Expr a, Expr b) {
  Expect(a, Sort::kInt, "arithmetic");
  Expect(b, Sort::kInt, "arithmetic");
  return Make(kind, Sort::kInt, 0, "", {std::move(a), std::move(b)});
}

Expr Add(Expr a, Expr b) { return Arith(Kind::kAdd, a, b); }
Expr Sub(Expr a, Expr b) { return Arith(Kind::kSub, a, b); }
Expr Mul(Expr a, Expr b) { return Arith(Kind::kMul, a, b); }
Expr Div(Expr a, Expr b) { return Arith(Kind::kDiv, a, b); }
Expr Mod(Expr a, Expr b) { return Arith(Kind::kMod, a, b); }

Expr Compare(Kind kind, Expr a, Expr b) {
  Expect(a, Sort::kInt, "comparison");
  Expect(b, Sort::kInt, "comparison");
  return Make(kind, Sort::kBool, 0, "", {std::move(a), std::move(b)});
}

Expr Eq(Expr a, Expr b) { return Compare(Kind::kEq, a, b); }
Expr Ne(Expr a, Expr b) { return Compare(Kind::kNe, a, b); }
Expr Lt(Expr a, Expr b) { return Compare(Kind::kLt, a, b); }
Expr Le(Expr a, Expr b) { return Compare(Kind::kLe, a, b); }
Expr Gt(Expr a, Expr b) { return Compare(Kind::kGt, a, b); }
Expr Ge(Expr a, Expr b) { return Compare(Kind::kGe, a, b); }

Expr Not(Expr a) {
  Expect(a, Sort::kBool, "negation");
  return Make(Kind::kNot, Sort::kBool, 0, "", {std::move(a)});
}

Expr And(std::vector<Expr> args) {
  if (args.empty()) return True();
  if (args.size() == 1) {
    Expect(args[0], Sort::kBool, "conjunction");
    return args[0];
  }
  for (const auto& a : args) Expect(a, Sort::kBool, "conjunction");
  return Make(Kind::kAnd, Sort::kBool, 0, "", std::move(args));
}

Expr And(Expr a, Expr b) { return And(std::vector<Expr>{a, b}); }

Expr Or(std::vector<Expr> args) {
  if (args.empty()) return False();
  if (args.size() == 1) {
    Expect(args[0], Sort::kBool, "disjunction");
    return args[0];
  }
  for (const auto& a : args) Expect(a, Sort::kBool, "disjunction");
  return Make(Kind::kOr, Sort::kBool, 0, "", std::move(args));
}

Expr Or(Expr a, Expr b) { return Or(std::vector<Expr>{a, b}); }

Expr Implies(Expr a, Expr b) {
  Expect(a, Sort::kBool, "implication");
  Expect(b, Sort::kBool, "implication");
  return Make(Kind::kImplies, Sort::kBool, 0, "", {std::move(a), std::move(b)});
}

Expr Ite(Expr cond, Expr then_term, Expr else_term) {
  Expect(cond, Sort::kBool, "ite condition");
  Expect(then_term, Sort::kInt, "ite branch");
  Expect(else_term, Sort::kInt, "ite branch");
  return Make(Kind::kIte, Sort::kInt, 0, "",
              {std::move(cond), std::move(then_term), std::move(else_term)});
}

Expr Quantifier(Kind kind, const std::string& var, Expr lo, Expr hi,
                Expr body) {
  Expect(lo, Sort::kInt, "quantifier bound");
  Expect(hi, Sort::kInt, "quantifier bound");
  Expect(body, Sort::kBool, "quantifier body");
  const std::set<std::string> bound_vars = FreeVars(lo);
  const std::set<std::string> hi_vars = FreeVars(hi);
  if (bound_vars.count(var) || hi_vars.count(var)) {
    throw TypeError("quantifier bounds must not mention bound variable " + var,
                    var);
  }
  return Make(kind, Sort::kBool, 0, var,
              {std::move(lo), std::move(hi), std::move(body)});
}

Expr Forall(const std::string& var, Expr lo, Expr hi, Expr body) {
  return Quantifier(Kind::kForall, var, std::move(lo), std::move(hi),
                    std::move(body));
}

Expr Exists(const std::string& var, Expr lo, Expr hi, Expr body) {
  return Quantifier(Kind::kExists, var, std::move(lo), std::move(hi),
                    std::move(body));
}

Expr Nondet() { return Make(Kind::kNondet, Sort::kBool, 0, "", {}); }

Expr WithArgs(const Expr& e, std::vector<Expr> args) {
  return Make(e->kind(), e->sort(), e->value(), e->name(), std::move(args));
}

bool Equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->sort() != b->sort() ||
      a->value() != b->value() || a->name() != b->name() ||
      a->args().size() != b->args().size()) {
    return false;
  }
  for (size_t i = 0; i < a->args().size(); ++i) {
    if (!Equal(a->arg(i), b->arg(i))) return false;
  }
  return true;
}

namespace {

bool AlphaEqualIn(const Expr& a, const Expr& b,
                  std::map<std::string, std::string>& left_to_right,
                  std::map<std::string, std::string>& right_to_left) {
  if (a->kind() != b->kind() || a->sort() != b->sort() ||
      a->value() != b->value() || a->args().size() != b->args().size()) {
    return false;
  }
  if (a->kind() == Kind::kVar) {
    auto l = left_to_right.find(a->name());
    auto r = right_to_left.find(b->name());
    if (l == left_to_right.end() && r == right_to_left.end()) {
      return a->name() == b->name();
    }
    return l != left_to_right.end() && r != right_to_left.end() &&
           l->second == b->name() && r->second == a->name();
  }
  if (a->is_quantifier()) {
    if (!AlphaEqualIn(a->arg(0), b->arg(0), left_to_right, right_to_left) ||
        !AlphaEqualIn(a->arg(1), b->arg(1), left_to_right, right_to_left)) {
      return false;
    }
    auto saved_l = left_to_right;
    auto saved_r = right_to_left;
    left_to_right[a->name()] = b->name();
    right_to_left[b->name()] = a->name();
    bool ok = AlphaEqualIn(a->arg(2), b->arg(2), left_to_right, right_to_left);
    left_to_right = std::move(saved_l);
    right_to_left = std::move(saved_r);
    return ok;
  }
  if (a->name() != b->name()) return false;
  for (size_t i = 0; i < a->args().size(); ++i) {
    if (!AlphaEqualIn(a->arg(i), b->arg(i), left_to_right, right_to_left)) {
      return false;
    }
  }
  return true;
}

void CollectFree(const Expr& e, std::set<std::string>& bound,
                 std::set<std::pair<std::string, Sort>>& out) {
  if (e->kind() == Kind::kVar) {
    if (!bound.count(e->name())) out.emplace(e->name(), e->sort());
    return;
  }
  if (e->is_quantifier()) {
    CollectFree(e->arg(0), bound, out);
    CollectFree(e->arg(1), bound, out);
    bool inserted = bound.insert(e->name()).second;
    CollectFree(e->arg(2), bound, out);
    if (inserted) bound.erase(e->name());
    return;
  }
  for (const auto& a : e->args()) CollectFree(a, bound, out);
}

void CollectAll(const Expr& e, std::set<std::string>& out) {
  if (e->kind() == Kind::kVar || e->is_quantifier()) out.insert(e->name());
  for (const auto& a : e->args()) CollectAll(a, out);
}

}  // namespace

bool AlphaEqual(const Expr& a, const Expr& b) {
  std::map<std::string, std::string> l2r;
  std::map<std::string, std::string> r2l;
  return AlphaEqualIn(a, b, l2r, r2l);
}

std::set<std::pair<std::string, Sort>> FreeVarsSorted(const Expr& e) {
  std::set<std::string> bound;
  std::set<std::pair<std::string, Sort>> out;
  CollectFree(e, bound, out);
  return out;
}

std::set<std::string> FreeVars(const Expr& e) {
  std::set<std::string> names;
  for (const auto& [name, sort] : FreeVarsSorted(e)) names.insert(name);
  return names;
}

std::set<std::string> AllNames(const Expr& e) {
  std::set<std::string> out;
  CollectAll(e, out);
  return out;
}

std::vector<Formula> Conjuncts(const Formula& f) {
  if (f->is_true()) return {};
  if (f->kind() != Kind::kAnd) return {f};
  std::vector<Formula> out;
  for (const auto& a : f->args()) {
    auto inner = Conjuncts(a);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

bool ContainsKind(const Expr& e, Kind kind) {
  if (e->kind() == kind) return true;
  for (const auto& a : e->args()) {
    if (ContainsKind(a, kind)) return true;
  }
  return false;
}

}  // namespace invgen
