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

#include "invgen/logic.h"

#include <utility>
#include <vector>

#include "invgen/arith.h"
#include "invgen/error.h"

namespace invgen {

int64_t State::Int(const std::string& name) const {
  auto it = vars.find(name);
  if (it == vars.end()) {
    throw EvalError(EvalError::Kind::kUnbound, "unbound variable " + name);
  }
  if (const auto* v = std::get_if<int64_t>(&it->second)) return *v;
  throw EvalError(EvalError::Kind::kUnsupported, name + " is an array");
}

const ArrayValue& State::Array(const std::string& name) const {
  auto it = vars.find(name);
  if (it == vars.end()) {
    throw EvalError(EvalError::Kind::kUnbound, "unbound variable " + name);
  }
  if (const auto* v = std::get_if<ArrayValue>(&it->second)) return *v;
  throw EvalError(EvalError::Kind::kUnsupported, name + " is not an array");
}

State State::Restrict(const std::vector<std::string>& names) const {
  State out;
  out.nondet_seed = nondet_seed;
  for (const auto& n : names) {
    auto it = vars.find(n);
    if (it != vars.end()) out.vars.insert(*it);
  }
  return out;
}

std::string State::ToString() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : vars) {
    if (!first) out += ", ";
    first = false;
    out += name + ": ";
    if (const auto* v = std::get_if<int64_t>(&value)) {
      out += std::to_string(*v);
    } else {
      const auto& arr = std::get<ArrayValue>(value);
      out += "[";
      for (size_t i = 0; i < arr.elems.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(arr.elems[i]);
      }
      out += "]";
      if (!arr.outside.empty()) {
        out += " outside {";
        bool f2 = true;
        for (const auto& [k, v] : arr.outside) {
          if (!f2) out += ", ";
          f2 = false;
          out += std::to_string(k) + ": " + std::to_string(v);
        }
        out += "}";
      }
    }
  }
  out += "}";
  return out;
}

namespace {

constexpr int64_t kMaxQuantifierRange = 1000000;

class Evaluator {
 public:
  explicit Evaluator(const State& s) : s_(s) {}

  int64_t Int(const Expr& e) {
    switch (e->kind()) {
      case Kind::kIntLit:
        return e->value();
      case Kind::kVar:
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
          if (it->first == e->name()) return it->second;
        }
        return s_.Int(e->name());
      case Kind::kSelect:
        return Read(e->arg(0), Int(e->arg(1)));
      case Kind::kLength:
        return Len(e->arg(0));
      case Kind::kNeg:
        return CheckedNeg(Int(e->arg(0)));
      case Kind::kAdd:
        return CheckedAdd(Int(e->arg(0)), Int(e->arg(1)));
      case Kind::kSub:
        return CheckedSub(Int(e->arg(0)), Int(e->arg(1)));
      case Kind::kMul:
        return CheckedMul(Int(e->arg(0)), Int(e->arg(1)));
      case Kind::kDiv:
        return EuclidDiv(Int(e->arg(0)), Int(e->arg(1)));
      case Kind::kMod:
        return EuclidMod(Int(e->arg(0)), Int(e->arg(1)));
      case Kind::kIte:
        return Bool(e->arg(0)) ? Int(e->arg(1)) : Int(e->arg(2));
      default:
        throw EvalError(EvalError::Kind::kUnsupported,
                        "not an integer term: " + ToString(e));
    }
  }

  bool Bool(const Expr& e) {
    switch (e->kind()) {
      case Kind::kBoolLit:
        return e->value() != 0;
      case Kind::kEq:
        return Int(e->arg(0)) == Int(e->arg(1));
      case Kind::kNe:
        return Int(e->arg(0)) != Int(e->arg(1));
      case Kind::kLt:
        return Int(e->arg(0)) < Int(e->arg(1));
      case Kind::kLe:
        return Int(e->arg(0)) <= Int(e->arg(1));
      case Kind::kGt:
        return Int(e->arg(0)) > Int(e->arg(1));
      case Kind::kGe:
        return Int(e->arg(0)) >= Int(e->arg(1));
      case Kind::kNot:
        return !Bool(e->arg(0));
      case Kind::kAnd:
        for (const auto& a : e->args()) {
          if (!Bool(a)) return false;
        }
        return true;
      case Kind::kOr:
        for (const auto& a : e->args()) {
          if (Bool(a)) return true;
        }
        return false;
      case Kind::kImplies:
        return !Bool(e->arg(0)) || Bool(e->arg(1));
      case Kind::kForall:
      case Kind::kExists: {
        int64_t lo = Int(e->arg(0));
        int64_t hi = Int(e->arg(1));
        if (hi > lo && CheckedSub(hi, lo) > kMaxQuantifierRange) {
          throw EvalError(EvalError::Kind::kUnsupported,
                          "quantifier range too large");
        }
        bool forall = e->kind() == Kind::kForall;
        bound_.emplace_back(e->name(), 0);
        bool result = forall;
        for (int64_t k = lo; k < hi; ++k) {
          bound_.back().second = k;
          if (Bool(e->arg(2)) != forall) {
            result = !forall;
            break;
          }
        }
        bound_.pop_back();
        return result;
      }
      case Kind::kNondet:
        throw EvalError(EvalError::Kind::kUnsupported,
                        "nondet() has no value in an assertion");
      default:
        throw EvalError(EvalError::Kind::kUnsupported,
                        "not a formula: " + ToString(e));
    }
  }

  Value Any(const Expr& e) {
    if (e->sort() != Sort::kArray) {
      if (e->sort() == Sort::kBool) return static_cast<int64_t>(Bool(e));
      return Int(e);
    }
    if (e->kind() == Kind::kVar) return s_.Array(e->name());
    if (e->kind() == Kind::kStore) {
      ArrayValue base = std::get<ArrayValue>(Any(e->arg(0)));
      int64_t idx = Int(e->arg(1));
      int64_t v = Int(e->arg(2));
      if (idx >= 0 && idx < base.length()) {
        base.elems[static_cast<size_t>(idx)] = v;
      } else {
        base.outside[idx] = v;
      }
      return base;
    }
    throw EvalError(EvalError::Kind::kUnsupported,
                    "not an array term: " + ToString(e));
  }

 private:
  int64_t Read(const Expr& arr, int64_t idx) {
    if (arr->kind() == Kind::kStore) {
      if (Int(arr->arg(1)) == idx) return Int(arr->arg(2));
      return Read(arr->arg(0), idx);
    }
    if (arr->kind() != Kind::kVar) {
      throw EvalError(EvalError::Kind::kUnsupported,
                      "not an array term: " + ToString(arr));
    }
    const ArrayValue& a = s_.Array(arr->name());
    if (idx >= 0 && idx < a.length()) return a.elems[static_cast<size_t>(idx)];
    auto it = a.outside.find(idx);
    if (it != a.outside.end()) return it->second;
    throw EvalError(EvalError::Kind::kOutOfBounds,
                    "index " + std::to_string(idx) + " out of bounds for " +
                        arr->name() + " of length " +
                        std::to_string(a.length()));
  }

  int64_t Len(const Expr& arr) {
    if (arr->kind() == Kind::kStore) return Len(arr->arg(0));
    if (arr->kind() != Kind::kVar) {
      throw EvalError(EvalError::Kind::kUnsupported,
                      "not an array term: " + ToString(arr));
    }
    return s_.Array(arr->name()).length();
  }

  const State& s_;
  std::vector<std::pair<std::string, int64_t>> bound_;
};

Expr SubstRec(const Expr& e, const std::map<std::string, Expr>& repl) {
  if (repl.empty()) return e;
  if (e->kind() == Kind::kVar) {
    auto it = repl.find(e->name());
    if (it == repl.end()) return e;
    if (it->second->sort() != e->sort()) {
      throw TypeError("cannot substitute " + std::string(SortName(
                          it->second->sort())) +
                          " term for " + SortName(e->sort()) + " variable " +
                          e->name(),
                      e->name());
    }
    return it->second;
  }
  if (e->is_quantifier()) {
    Expr lo = SubstRec(e->arg(0), repl);
    Expr hi = SubstRec(e->arg(1), repl);
    std::map<std::string, Expr> inner = repl;
    inner.erase(e->name());
    std::set<std::string> body_free = FreeVars(e->arg(2));
    bool capture = false;
    std::set<std::string> avoid = AllNames(e->arg(2));
    for (auto it = inner.begin(); it != inner.end();) {
      if (!body_free.count(it->first)) {
        it = inner.erase(it);
        continue;
      }
      auto fv = FreeVars(it->second);
      if (fv.count(e->name())) capture = true;
      avoid.insert(fv.begin(), fv.end());
      avoid.insert(it->first);
      ++it;
    }
    std::string var = e->name();
    Expr body = e->arg(2);
    if (capture) {
      std::string fresh = FreshName(var, avoid);
      body = SubstRec(body, {{var, Var(fresh, Sort::kInt)}});
      var = fresh;
    }
    body = SubstRec(body, inner);
    return Quantifier(e->kind(), var, lo, hi, body);
  }
  if (e->args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e->args().size());
  bool changed = false;
  for (const auto& a : e->args()) {
    args.push_back(SubstRec(a, repl));
    changed = changed || args.back() != a;
  }
  return changed ? WithArgs(e, std::move(args)) : e;
}

Expr ReadOverStore(const Expr& arr, const Expr& idx) {
  if (arr->kind() != Kind::kStore) return Select(arr, idx);
  const Expr& i = arr->arg(1);
  if (Equal(i, idx)) return arr->arg(2);
  if (i->is_int_lit() && idx->is_int_lit()) return ReadOverStore(arr->arg(0), idx);
  return Ite(Eq(idx, i), arr->arg(2), ReadOverStore(arr->arg(0), idx));
}

Expr LengthOf(const Expr& arr) {
  if (arr->kind() == Kind::kStore) return LengthOf(arr->arg(0));
  return Length(arr);
}

}  // namespace

Value Eval(const Expr& e, const State& s) { return Evaluator(s).Any(e); }

int64_t EvalInt(const Expr& e, const State& s) { return Evaluator(s).Int(e); }

bool EvalFormula(const Formula& f, const State& s) {
  return Evaluator(s).Bool(f);
}

Formula Substitute(const Formula& f, const std::string& x, const Expr& e) {
  return SubstRec(f, {{x, e}});
}

Formula SubstituteAll(const Formula& f,
                      const std::map<std::string, Expr>& replacements) {
  return SubstRec(f, replacements);
}

Expr NormalizeStores(const Expr& e) {
  if (e->args().empty()) return e;
  std::vector<Expr> args;
  bool changed = false;
  for (const auto& a : e->args()) {
    args.push_back(NormalizeStores(a));
    changed = changed || args.back() != a;
  }
  if (e->kind() == Kind::kSelect && args[0]->kind() == Kind::kStore) {
    return NormalizeStores(ReadOverStore(args[0], args[1]));
  }
  if (e->kind() == Kind::kLength && args[0]->kind() == Kind::kStore) {
    return LengthOf(args[0]);
  }
  return changed ? WithArgs(e, std::move(args)) : e;
}

Formula SubstituteArray(const Formula& f, const std::string& a, const Expr& i,
                        const Expr& v) {
  Expr arr = Var(a, Sort::kArray);
  return NormalizeStores(SubstRec(f, {{a, Store(arr, i, v)}}));
}

std::string FreshName(const std::string& base,
                      const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace invgen
