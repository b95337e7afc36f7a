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

#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "invgen/arith.h"
#include "invgen/error.h"
#include "invgen/logic.h"

namespace invgen {
namespace {

constexpr int kMaxPasses = 32;

std::optional<int64_t> TryFold(Kind kind, int64_t a, int64_t b) {
  try {
    switch (kind) {
      case Kind::kAdd: return CheckedAdd(a, b);
      case Kind::kSub: return CheckedSub(a, b);
      case Kind::kMul: return CheckedMul(a, b);
      case Kind::kDiv: return EuclidDiv(a, b);
      case Kind::kMod: return EuclidMod(a, b);
      default: return std::nullopt;
    }
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

// Splits `e` into `t + k` (t may be null when e is a constant).
std::pair<Expr, int64_t> SplitConst(const Expr& e) {
  if (e->is_int_lit()) return {nullptr, e->value()};
  if ((e->kind() == Kind::kAdd || e->kind() == Kind::kSub) &&
      e->arg(1)->is_int_lit()) {
    int64_t k = e->arg(1)->value();
    if (e->kind() == Kind::kSub) {
      if (k == std::numeric_limits<int64_t>::min()) return {e, 0};
      k = -k;
    }
    return {e->arg(0), k};
  }
  return {e, 0};
}

Expr MakeSum(const Expr& t, int64_t k) {
  if (!t) return IntLit(k);
  if (k == 0) return t;
  if (k > 0) return Add(t, IntLit(k));
  if (k == std::numeric_limits<int64_t>::min()) return Add(t, IntLit(k));
  return Sub(t, IntLit(-k));
}

Kind Negated(Kind k) {
  switch (k) {
    case Kind::kEq: return Kind::kNe;
    case Kind::kNe: return Kind::kEq;
    case Kind::kLt: return Kind::kGe;
    case Kind::kLe: return Kind::kGt;
    case Kind::kGt: return Kind::kLe;
    case Kind::kGe: return Kind::kLt;
    default: return k;
  }
}

bool CompareConst(Kind k, int64_t a, int64_t b) {
  switch (k) {
    case Kind::kEq: return a == b;
    case Kind::kNe: return a != b;
    case Kind::kLt: return a < b;
    case Kind::kLe: return a <= b;
    case Kind::kGt: return a > b;
    case Kind::kGe: return a >= b;
    default: return false;
  }
}

// Linear combination over opaque atoms, keyed by printed form.
struct Linear {
  std::map<std::string, int64_t> coeffs;
  int64_t constant = 0;
  bool ok = true;
};

void AddScaled(Linear& acc, const Linear& other, int64_t scale) {
  if (!other.ok) {
    acc.ok = false;
    return;
  }
  try {
    acc.constant = CheckedAdd(acc.constant, CheckedMul(other.constant, scale));
    for (const auto& [atom, c] : other.coeffs) {
      int64_t& slot = acc.coeffs[atom];
      slot = CheckedAdd(slot, CheckedMul(c, scale));
      if (slot == 0) acc.coeffs.erase(atom);
    }
  } catch (const EvalError&) {
    acc.ok = false;
  }
}

Linear ToLinear(const Expr& e) {
  Linear out;
  switch (e->kind()) {
    case Kind::kIntLit:
      out.constant = e->value();
      return out;
    case Kind::kAdd:
    case Kind::kSub:
      AddScaled(out, ToLinear(e->arg(0)), 1);
      AddScaled(out, ToLinear(e->arg(1)), e->kind() == Kind::kAdd ? 1 : -1);
      return out;
    case Kind::kNeg:
      AddScaled(out, ToLinear(e->arg(0)), -1);
      return out;
    case Kind::kMul:
      if (e->arg(0)->is_int_lit()) {
        AddScaled(out, ToLinear(e->arg(1)), e->arg(0)->value());
        return out;
      }
      if (e->arg(1)->is_int_lit()) {
        AddScaled(out, ToLinear(e->arg(0)), e->arg(1)->value());
        return out;
      }
      break;
    default:
      break;
  }
  out.coeffs[ToString(e)] = 1;
  return out;
}

// `coeffs . x + constant >= 0` facts implied by a comparison.
std::vector<Linear> LowerBounds(const Expr& cmp) {
  if (!cmp->is_comparison()) return {};
  Linear diff;
  AddScaled(diff, ToLinear(cmp->arg(0)), 1);
  AddScaled(diff, ToLinear(cmp->arg(1)), -1);
  if (!diff.ok) return {};
  Linear neg;
  AddScaled(neg, diff, -1);
  if (!neg.ok) return {};
  auto shifted = [](Linear l, int64_t by) {
    try {
      l.constant = CheckedAdd(l.constant, by);
    } catch (const EvalError&) {
      l.ok = false;
    }
    return l;
  };
  std::vector<Linear> out;
  switch (cmp->kind()) {
    case Kind::kGe: out = {diff}; break;
    case Kind::kGt: out = {shifted(diff, -1)}; break;
    case Kind::kLe: out = {neg}; break;
    case Kind::kLt: out = {shifted(neg, -1)}; break;
    case Kind::kEq: out = {diff, neg}; break;
    default: return {};
  }
  for (const auto& l : out) {
    if (!l.ok) return {};
  }
  return out;
}

bool Entails(const std::vector<Formula>& facts, const Formula& goal) {
  for (const auto& f : facts) {
    if (Equal(f, goal)) return true;
  }
  auto needs = LowerBounds(goal);
  if (needs.empty()) return false;
  std::vector<Linear> have;
  for (const auto& f : facts) {
    for (auto& l : LowerBounds(f)) have.push_back(std::move(l));
  }
  for (const auto& need : needs) {
    bool found = false;
    for (const auto& h : have) {
      if (h.coeffs == need.coeffs && h.constant <= need.constant) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Expr SimplifyCompare(Kind kind, const Expr& l, const Expr& r) {
  if (l->is_int_lit() && r->is_int_lit()) {
    return BoolLit(CompareConst(kind, l->value(), r->value()));
  }
  if (Equal(l, r)) {
    return BoolLit(kind == Kind::kEq || kind == Kind::kLe || kind == Kind::kGe);
  }
  if (r->is_int_lit()) {
    auto [t, k] = SplitConst(l);
    if (t && k != 0) {
      if (auto c = TryFold(Kind::kSub, r->value(), k)) {
        return Compare(kind, t, IntLit(*c));
      }
    }
  }
  if (l->is_int_lit()) {
    auto [t, k] = SplitConst(r);
    if (t && k != 0) {
      if (auto c = TryFold(Kind::kSub, l->value(), k)) {
        return Compare(kind, IntLit(*c), t);
      }
    }
  }
  return Compare(kind, l, r);
}

Expr SimplifyArith(Kind kind, const Expr& a, const Expr& b) {
  if (a->is_int_lit() && b->is_int_lit()) {
    if (auto v = TryFold(kind, a->value(), b->value())) return IntLit(*v);
    return Arith(kind, a, b);
  }
  switch (kind) {
    case Kind::kAdd:
      if (b->is_int_lit()) {
        auto [t, k] = SplitConst(a);
        if (auto s = TryFold(Kind::kAdd, k, b->value())) return MakeSum(t, *s);
      }
      if (a->is_int_lit()) {
        if (a->value() == 0) return b;
        return SimplifyArith(Kind::kAdd, b, a);
      }
      if (b->kind() == Kind::kNeg) return Sub(a, b->arg(0));
      break;
    case Kind::kSub:
      if (b->is_int_lit()) {
        auto [t, k] = SplitConst(a);
        if (auto s = TryFold(Kind::kSub, k, b->value())) return MakeSum(t, *s);
      }
      if (a->is_int_lit() && a->value() == 0) return Neg(b);
      if (Equal(a, b)) return IntLit(0);
      if (b->kind() == Kind::kNeg) return Add(a, b->arg(0));
      break;
    case Kind::kMul:
      if (a->is_int_lit()) {
        if (a->value() == 0) return IntLit(0);
        if (a->value() == 1) return b;
      }
      if (b->is_int_lit()) {
        if (b->value() == 0) return IntLit(0);
        if (b->value() == 1) return a;
      }
      break;
    case Kind::kDiv:
      if (b->is_int_lit() && b->value() == 1) return a;
      break;
    case Kind::kMod:
      if (b->is_int_lit() && (b->value() == 1 || b->value() == -1)) {
        return IntLit(0);
      }
      break;
    default:
      break;
  }
  return Arith(kind, a, b);
}

void AddUnique(std::vector<Expr>& out, const Expr& e) {
  for (const auto& x : out) {
    if (Equal(x, e)) return;
  }
  out.push_back(e);
}

Expr SimplifyAnd(const std::vector<Expr>& args) {
  std::vector<Expr> out;
  for (const auto& a : args) {
    if (a->is_true()) continue;
    if (a->is_false()) return False();
    if (a->kind() == Kind::kAnd) {
      for (const auto& b : a->args()) AddUnique(out, b);
    } else {
      AddUnique(out, a);
    }
  }
  return And(std::move(out));
}

Expr SimplifyOr(const std::vector<Expr>& args) {
  std::vector<Expr> out;
  for (const auto& a : args) {
    if (a->is_false()) continue;
    if (a->is_true()) return True();
    if (a->kind() == Kind::kOr) {
      for (const auto& b : a->args()) AddUnique(out, b);
    } else {
      AddUnique(out, a);
    }
  }
  return Or(std::move(out));
}

Expr SimplifyImplies(const Expr& a, const Expr& b) {
  if (a->is_true()) return b;
  if (a->is_false() || b->is_true()) return True();
  if (Equal(a, b)) return True();
  if (b->kind() == Kind::kImplies) {
    return SimplifyImplies(SimplifyAnd({a, b->arg(0)}), b->arg(1));
  }
  std::vector<Formula> facts = Conjuncts(a);
  std::vector<Formula> goals =
      b->kind() == Kind::kAnd ? b->args() : std::vector<Formula>{b};
  std::vector<Formula> remaining;
  for (const auto& g : goals) {
    if (!Entails(facts, g)) remaining.push_back(g);
  }
  if (remaining.empty()) return True();
  if (b->is_false()) return Not(a);
  Expr rhs = remaining.size() == goals.size() ? b : And(remaining);
  return Implies(a, rhs);
}

Expr SimplifyQuantifier(const Expr& e, const Expr& lo, const Expr& hi,
                        const Expr& body) {
  bool forall = e->kind() == Kind::kForall;
  if (forall && body->is_true()) return True();
  if (!forall && body->is_false()) return False();
  auto [lt, lk] = SplitConst(lo);
  auto [ht, hk] = SplitConst(hi);
  bool same_base = (!lt && !ht) || (lt && ht && Equal(lt, ht));
  if (same_base) {
    if (hk <= lk) return BoolLit(forall);
    auto width = TryFold(Kind::kSub, hk, lk);
    if (width && *width == 1) return Substitute(body, e->name(), lo);
  }
  return Quantifier(e->kind(), e->name(), lo, hi, body);
}

Expr Step(const Expr& e) {
  if (e->args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e->args().size());
  for (const auto& a : e->args()) args.push_back(Step(a));
  switch (e->kind()) {
    case Kind::kNeg:
      if (args[0]->is_int_lit() && args[0]->value() !=
                                       std::numeric_limits<int64_t>::min()) {
        return IntLit(-args[0]->value());
      }
      if (args[0]->kind() == Kind::kNeg) return args[0]->arg(0);
      return Neg(args[0]);
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv:
    case Kind::kMod:
      return SimplifyArith(e->kind(), args[0], args[1]);
    case Kind::kEq:
    case Kind::kNe:
    case Kind::kLt:
    case Kind::kLe:
    case Kind::kGt:
    case Kind::kGe:
      return SimplifyCompare(e->kind(), args[0], args[1]);
    case Kind::kNot: {
      const Expr& a = args[0];
      if (a->is_bool_lit()) return BoolLit(!a->is_true());
      if (a->kind() == Kind::kNot) return a->arg(0);
      if (a->is_comparison()) {
        return Compare(Negated(a->kind()), a->arg(0), a->arg(1));
      }
      return Not(a);
    }
    case Kind::kAnd:
      return SimplifyAnd(args);
    case Kind::kOr:
      return SimplifyOr(args);
    case Kind::kImplies:
      return SimplifyImplies(args[0], args[1]);
    case Kind::kIte:
      if (args[0]->is_true()) return args[1];
      if (args[0]->is_false()) return args[2];
      if (Equal(args[1], args[2])) return args[1];
      return Ite(args[0], args[1], args[2]);
    case Kind::kSelect:
      if (args[0]->kind() == Kind::kStore) {
        const Expr& st = args[0];
        if (Equal(st->arg(1), args[1])) return st->arg(2);
        if (st->arg(1)->is_int_lit() && args[1]->is_int_lit()) {
          return Select(st->arg(0), args[1]);
        }
      }
      return Select(args[0], args[1]);
    case Kind::kLength:
      if (args[0]->kind() == Kind::kStore) return Length(args[0]->arg(0));
      return Length(args[0]);
    case Kind::kForall:
    case Kind::kExists:
      return SimplifyQuantifier(e, args[0], args[1], args[2]);
    default:
      return WithArgs(e, std::move(args));
  }
}

}  // namespace

Formula Simplify(const Formula& f) {
  Expr cur = f;
  for (int i = 0; i < kMaxPasses; ++i) {
    Expr next = Step(cur);
    if (Equal(next, cur)) return next;
    cur = next;
  }
  return cur;
}

}  // namespace invgen
