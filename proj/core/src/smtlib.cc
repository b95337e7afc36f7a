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

#include "smtlib.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

#include "invgen/arith.h"
#include "invgen/error.h"
#include "invgen/logic.h"
#include "invgen/solver.h"

namespace invgen {

std::string SExpr::ToString() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ' ';
    out += list[i].ToString();
  }
  return out + ")";
}

namespace {

class SExprReader {
 public:
  explicit SExprReader(const std::string& text) : s_(text) {}

  std::vector<SExpr> All() {
    std::vector<SExpr> out;
    while (true) {
      Skip();
      if (pos_ >= s_.size()) return out;
      out.push_back(One());
    }
  }

 private:
  void Skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  SExpr One() {
    Skip();
    if (pos_ >= s_.size()) throw ProtocolError("unexpected end of solver reply");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr e;
      e.is_atom = false;
      while (true) {
        Skip();
        if (pos_ >= s_.size()) {
          throw ProtocolError("unbalanced parentheses in solver reply");
        }
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(One());
      }
    }
    if (c == ')') throw ProtocolError("unexpected ')' in solver reply");
    SExpr e;
    if (c == '|') {
      size_t end = s_.find('|', pos_ + 1);
      if (end == std::string::npos) throw ProtocolError("unterminated symbol");
      e.atom = s_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return e;
    }
    if (c == '"') {
      size_t i = pos_ + 1;
      while (i < s_.size()) {
        if (s_[i] == '"') {
          if (i + 1 < s_.size() && s_[i + 1] == '"') {
            i += 2;
            continue;
          }
          break;
        }
        ++i;
      }
      e.atom = s_.substr(pos_, i + 1 - pos_);
      pos_ = i + 1;
      return e;
    }
    size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')') {
      ++pos_;
    }
    e.atom = s_.substr(start, pos_ - start);
    return e;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

const char* SmtOp(Kind k) {
  switch (k) {
    case Kind::kAdd: return "+";
    case Kind::kSub: return "-";
    case Kind::kMul: return "*";
    case Kind::kDiv: return "div";
    case Kind::kMod: return "mod";
    case Kind::kEq: return "=";
    case Kind::kLt: return "<";
    case Kind::kLe: return "<=";
    case Kind::kGt: return ">";
    case Kind::kGe: return ">=";
    case Kind::kAnd: return "and";
    case Kind::kOr: return "or";
    case Kind::kImplies: return "=>";
    default: return nullptr;
  }
}

[[noreturn]] void Unsupported(const std::string& what) {
  throw Error("translation-unsupported: " + what);
}

void Translate(const Expr& e, std::string& out) {
  switch (e->kind()) {
    case Kind::kIntLit:
      if (e->value() < 0) {
        if (e->value() == std::numeric_limits<int64_t>::min()) {
          Unsupported("integer literal");
        }
        out += "(- " + std::to_string(-e->value()) + ")";
      } else {
        out += std::to_string(e->value());
      }
      return;
    case Kind::kBoolLit:
      out += e->value() ? "true" : "false";
      return;
    case Kind::kVar:
      if (e->sort() == Sort::kArray) Unsupported("bare array term " + e->name());
      out += QuoteSymbol(e->name());
      return;
    case Kind::kSelect:
      if (e->arg(0)->kind() != Kind::kVar) Unsupported("read of store term");
      out += "(" + QuoteSymbol(e->arg(0)->name()) + " ";
      Translate(e->arg(1), out);
      out += ")";
      return;
    case Kind::kLength:
      if (e->arg(0)->kind() != Kind::kVar) Unsupported("length of store term");
      out += LengthSymbol(e->arg(0)->name());
      return;
    case Kind::kNeg:
      out += "(- ";
      Translate(e->arg(0), out);
      out += ")";
      return;
    case Kind::kNe:
      out += "(not (= ";
      Translate(e->arg(0), out);
      out += " ";
      Translate(e->arg(1), out);
      out += "))";
      return;
    case Kind::kNot:
      out += "(not ";
      Translate(e->arg(0), out);
      out += ")";
      return;
    case Kind::kIte:
      out += "(ite ";
      Translate(e->arg(0), out);
      out += " ";
      Translate(e->arg(1), out);
      out += " ";
      Translate(e->arg(2), out);
      out += ")";
      return;
    case Kind::kForall:
    case Kind::kExists: {
      std::string k = QuoteSymbol(e->name());
      bool forall = e->kind() == Kind::kForall;
      out += forall ? "(forall ((" : "(exists ((";
      out += k + " Int)) (" + (forall ? "=> " : "and ") + "(and (<= ";
      Translate(e->arg(0), out);
      out += " " + k + ") (< " + k + " ";
      Translate(e->arg(1), out);
      out += ")) ";
      Translate(e->arg(2), out);
      out += "))";
      return;
    }
    case Kind::kStore:
      Unsupported("store term");
    case Kind::kNondet:
      Unsupported("nondet()");
    default: {
      const char* op = SmtOp(e->kind());
      if (!op) Unsupported(ToString(e));
      out += "(";
      out += op;
      for (const auto& a : e->args()) {
        out += " ";
        Translate(a, out);
      }
      out += ")";
      return;
    }
  }
}

// Model values: booleans are 0/1.
class ModelEval {
 public:
  explicit ModelEval(const std::map<std::string, const SExpr*>& defs)
      : defs_(defs) {}

  int64_t Call(const std::string& fn, const std::vector<int64_t>& args) {
    auto it = defs_.find(fn);
    if (it == defs_.end()) {
      throw ProtocolError("model references undefined symbol " + fn);
    }
    const SExpr& def = *it->second;  // (define-fun name ((x T)...) S body)
    const SExpr& params = def.list.at(2);
    if (params.is_atom || params.list.size() != args.size()) {
      throw ProtocolError("arity mismatch calling " + fn);
    }
    if (++depth_ > 256) throw ProtocolError("model recursion too deep");
    std::vector<std::pair<std::string, int64_t>> frame;
    for (size_t i = 0; i < args.size(); ++i) {
      frame.emplace_back(params.list[i].list.at(0).atom, args[i]);
    }
    env_.push_back(std::move(frame));
    int64_t v = Eval(def.list.at(4));
    env_.pop_back();
    --depth_;
    return v;
  }

  int64_t Eval(const SExpr& e) {
    if (e.is_atom) {
      const std::string& a = e.atom;
      if (a == "true") return 1;
      if (a == "false") return 0;
      if (!a.empty() && std::isdigit(static_cast<unsigned char>(a[0]))) {
        try {
          return std::stoll(a);
        } catch (const std::exception&) {
          throw ProtocolError("model value out of range: " + a);
        }
      }
      for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
        for (const auto& [n, v] : *it) {
          if (n == a) return v;
        }
      }
      return Call(a, {});
    }
    if (e.list.empty()) throw ProtocolError("empty application in model");
    const SExpr& head = e.list[0];
    if (!head.is_atom) throw ProtocolError("unsupported model term " + e.ToString());
    const std::string& op = head.atom;
    auto arg = [&](size_t i) { return Eval(e.list.at(i)); };
    size_t n = e.list.size() - 1;
    if (op == "ite") return arg(1) ? arg(2) : arg(3);
    if (op == "let") {
      std::vector<std::pair<std::string, int64_t>> frame;
      for (const auto& b : e.list.at(1).list) {
        frame.emplace_back(b.list.at(0).atom, Eval(b.list.at(1)));
      }
      env_.push_back(std::move(frame));
      int64_t v = arg(2);
      env_.pop_back();
      return v;
    }
    if (op == "-" && n == 1) return CheckedNeg(arg(1));
    if (op == "+" || op == "-" || op == "*") {
      int64_t acc = arg(1);
      for (size_t i = 2; i <= n; ++i) {
        int64_t v = arg(i);
        acc = op == "+" ? CheckedAdd(acc, v)
              : op == "-" ? CheckedSub(acc, v)
                          : CheckedMul(acc, v);
      }
      return acc;
    }
    if (op == "div") return EuclidDiv(arg(1), arg(2));
    if (op == "mod") return EuclidMod(arg(1), arg(2));
    if (op == "=") return arg(1) == arg(2);
    if (op == "distinct") return arg(1) != arg(2);
    if (op == "<") return arg(1) < arg(2);
    if (op == "<=") return arg(1) <= arg(2);
    if (op == ">") return arg(1) > arg(2);
    if (op == ">=") return arg(1) >= arg(2);
    if (op == "not") return !arg(1);
    if (op == "and") {
      for (size_t i = 1; i <= n; ++i) {
        if (!arg(i)) return 0;
      }
      return 1;
    }
    if (op == "or") {
      for (size_t i = 1; i <= n; ++i) {
        if (arg(i)) return 1;
      }
      return 0;
    }
    if (op == "=>") return !arg(1) || arg(2);
    std::vector<int64_t> args;
    for (size_t i = 1; i <= n; ++i) args.push_back(arg(i));
    return Call(op, args);
  }

 private:
  const std::map<std::string, const SExpr*>& defs_;
  std::vector<std::vector<std::pair<std::string, int64_t>>> env_;
  int depth_ = 0;
};

void CollectLiterals(const SExpr& e, std::set<int64_t>& out) {
  if (e.is_atom) {
    if (!e.atom.empty() && std::isdigit(static_cast<unsigned char>(e.atom[0]))) {
      try {
        int64_t v = std::stoll(e.atom);
        out.insert(v);
        out.insert(-v);
      } catch (const std::exception&) {
      }
    }
    return;
  }
  for (const auto& c : e.list) CollectLiterals(c, out);
}

constexpr int64_t kMaxModelLength = 10000;
constexpr int64_t kMaxOutsideSpan = 512;

}  // namespace

std::vector<SExpr> ParseSExprs(const std::string& text) {
  return SExprReader(text).All();
}

std::string QuoteSymbol(const std::string& name) { return "|" + name + "|"; }

std::string LengthSymbol(const std::string& array) {
  return "|" + array + ".length|";
}

std::string TranslateTerm(const Expr& e) {
  std::string out;
  Translate(e, out);
  return out;
}

std::string ToSmtLib(const Formula& antecedent, const Formula& consequent,
                     const SolverConfig& cfg) {
  Expr ant = NormalizeStores(antecedent);
  Expr cons = NormalizeStores(consequent);
  std::map<std::string, Sort> vars;
  for (const Expr& f : {ant, cons}) {
    for (const auto& [name, sort] : FreeVarsSorted(f)) {
      auto [it, inserted] = vars.emplace(name, sort);
      if (!inserted && it->second != sort) {
        throw TypeError("variable " + name + " used at two sorts", name);
      }
    }
  }
  std::string out;
  out += "(set-option :produce-models true)\n";
  if (cfg.seed != 0) {
    out += "(set-option :random-seed " + std::to_string(cfg.seed) + ")\n";
  }
  if (!cfg.logic.empty()) out += "(set-logic " + cfg.logic + ")\n";
  for (const auto& [name, sort] : vars) {
    if (sort == Sort::kArray) {
      out += "(declare-fun " + QuoteSymbol(name) + " (Int) Int)\n";
      out += "(declare-const " + LengthSymbol(name) + " Int)\n";
      out += "(assert (>= " + LengthSymbol(name) + " 0))\n";
    } else if (sort == Sort::kInt) {
      out += "(declare-const " + QuoteSymbol(name) + " Int)\n";
    } else {
      out += "(declare-const " + QuoteSymbol(name) + " Bool)\n";
    }
  }
  out += "(assert " + TranslateTerm(ant) + ")\n";
  out += "(assert (not " + TranslateTerm(cons) + "))\n";
  out += "(check-sat)\n";
  out += "(get-model)\n";
  return out;
}

State ExtractModel(const SExpr& model,
                   const std::set<std::pair<std::string, Sort>>& vars) {
  std::map<std::string, const SExpr*> defs;
  const std::vector<SExpr>* items = &model.list;
  for (const auto& item : *items) {
    if (item.is_atom) continue;  // the legacy `model` keyword
    if (item.list.size() == 5 && item.list[0].is_atom &&
        item.list[0].atom == "define-fun" && item.list[1].is_atom) {
      defs[item.list[1].atom] = &item;
    }
  }
  ModelEval eval(defs);
  State state;
  std::set<int64_t> interesting = {0};
  for (const auto& [name, sort] : vars) {
    if (sort != Sort::kInt) continue;
    int64_t v = defs.count(name) ? eval.Eval(defs[name]->list[4]) : 0;
    state.SetInt(name, v);
    interesting.insert(v);
  }
  for (const auto& [name, sort] : vars) {
    if (sort != Sort::kArray) continue;
    std::string len_name = name + ".length";
    int64_t len = defs.count(len_name) ? eval.Eval(defs[len_name]->list[4]) : 0;
    if (len < 0 || len > kMaxModelLength) {
      throw ProtocolError("model length of " + name + " is unusable");
    }
    ArrayValue arr;
    bool has_fn = defs.count(name) > 0;
    for (int64_t i = 0; i < len; ++i) {
      arr.elems.push_back(has_fn ? eval.Call(name, {i}) : 0);
    }
    if (has_fn) {
      std::set<int64_t> idx = interesting;
      CollectLiterals(defs[name]->list[4], idx);
      idx.insert(len);
      idx.insert(-1);
      int64_t lo = *idx.begin();
      int64_t hi = *idx.rbegin();
      if (hi - lo <= kMaxOutsideSpan) {
        for (int64_t i = lo - 1; i <= hi + 1; ++i) idx.insert(i);
      }
      for (int64_t i : idx) {
        if (i < 0 || i >= len) arr.outside[i] = eval.Call(name, {i});
      }
    }
    state.vars[name] = std::move(arr);
  }
  return state;
}

}  // namespace invgen
