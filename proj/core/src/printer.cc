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

#include <string>

#include "invgen/expr.h"

namespace invgen {
namespace {

// Binding strength, loosest first.
enum Prec {
  kImpliesPrec = 1,
  kOrPrec = 2,
  kAndPrec = 3,
  kCmpPrec = 4,
  kAddPrec = 5,
  kMulPrec = 6,
  kUnaryPrec = 7,
  kPostfixPrec = 8,
  kAtomPrec = 9,
};

int PrecOf(const Expr& e) {
  switch (e->kind()) {
    case Kind::kImplies:
      return kImpliesPrec;
    case Kind::kOr:
      return kOrPrec;
    case Kind::kAnd:
      return kAndPrec;
    case Kind::kEq:
    case Kind::kNe:
    case Kind::kLt:
    case Kind::kLe:
    case Kind::kGt:
    case Kind::kGe:
      return kCmpPrec;
    case Kind::kAdd:
    case Kind::kSub:
      return kAddPrec;
    case Kind::kMul:
    case Kind::kDiv:
    case Kind::kMod:
      return kMulPrec;
    case Kind::kNeg:
    case Kind::kNot:
      return kUnaryPrec;
    case Kind::kIntLit:
      return e->value() < 0 ? kUnaryPrec : kAtomPrec;
    case Kind::kSelect:
    case Kind::kLength:
      return kPostfixPrec;
    default:
      return kAtomPrec;
  }
}

const char* OpText(Kind kind) {
  switch (kind) {
    case Kind::kAdd: return "+";
    case Kind::kSub: return "-";
    case Kind::kMul: return "*";
    case Kind::kDiv: return "/";
    case Kind::kMod: return "%";
    case Kind::kEq: return "==";
    case Kind::kNe: return "!=";
    case Kind::kLt: return "<";
    case Kind::kLe: return "<=";
    case Kind::kGt: return ">";
    case Kind::kGe: return ">=";
    case Kind::kAnd: return "&&";
    case Kind::kOr: return "||";
    case Kind::kImplies: return "==>";
    default: return "?";
  }
}

void Print(const Expr& e, std::string& out);

// Prints `e`, parenthesised unless it binds strictly tighter than `min_prec`
// (or exactly as tight when `allow_equal`).
void PrintAt(const Expr& e, int min_prec, bool allow_equal, std::string& out) {
  int p = PrecOf(e);
  bool bare = p > min_prec || (allow_equal && p == min_prec);
  if (!bare) out += '(';
  Print(e, out);
  if (!bare) out += ')';
}

void Print(const Expr& e, std::string& out) {
  switch (e->kind()) {
    case Kind::kIntLit:
      out += std::to_string(e->value());
      return;
    case Kind::kBoolLit:
      out += e->value() ? "true" : "false";
      return;
    case Kind::kVar:
      out += e->name();
      return;
    case Kind::kNondet:
      out += "nondet()";
      return;
    case Kind::kSelect:
      PrintAt(e->arg(0), kPostfixPrec, true, out);
      out += '[';
      Print(e->arg(1), out);
      out += ']';
      return;
    case Kind::kLength:
      PrintAt(e->arg(0), kPostfixPrec, true, out);
      out += ".length";
      return;
    case Kind::kStore:
      out += "store(";
      Print(e->arg(0), out);
      out += ", ";
      Print(e->arg(1), out);
      out += ", ";
      Print(e->arg(2), out);
      out += ')';
      return;
    case Kind::kIte:
      out += "ite(";
      Print(e->arg(0), out);
      out += ", ";
      Print(e->arg(1), out);
      out += ", ";
      Print(e->arg(2), out);
      out += ')';
      return;
    case Kind::kNeg: {
      out += '-';
      const Expr& a = e->arg(0);
      // `-5` would re-parse as a literal, and `--x` reads badly.
      bool wrap = a->kind() == Kind::kIntLit || a->kind() == Kind::kNeg ||
                  PrecOf(a) < kUnaryPrec;
      if (wrap) out += '(';
      Print(a, out);
      if (wrap) out += ')';
      return;
    }
    case Kind::kNot: {
      out += '!';
      const Expr& a = e->arg(0);
      bool wrap = PrecOf(a) < kPostfixPrec;
      if (wrap) out += '(';
      Print(a, out);
      if (wrap) out += ')';
      return;
    }
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv:
    case Kind::kMod: {
      int p = PrecOf(e);
      PrintAt(e->arg(0), p, true, out);
      out += ' ';
      out += OpText(e->kind());
      out += ' ';
      PrintAt(e->arg(1), p, false, out);
      return;
    }
    case Kind::kEq:
    case Kind::kNe:
    case Kind::kLt:
    case Kind::kLe:
    case Kind::kGt:
    case Kind::kGe:
      PrintAt(e->arg(0), kCmpPrec, false, out);
      out += ' ';
      out += OpText(e->kind());
      out += ' ';
      PrintAt(e->arg(1), kCmpPrec, false, out);
      return;
    case Kind::kAnd:
    case Kind::kOr: {
      int p = PrecOf(e);
      for (size_t i = 0; i < e->args().size(); ++i) {
        if (i > 0) {
          out += ' ';
          out += OpText(e->kind());
          out += ' ';
        }
        PrintAt(e->arg(i), p, false, out);
      }
      return;
    }
    case Kind::kImplies:
      PrintAt(e->arg(0), kImpliesPrec, false, out);
      out += " ==> ";
      PrintAt(e->arg(1), kImpliesPrec, true, out);
      return;
    case Kind::kForall:
    case Kind::kExists:
      out += e->kind() == Kind::kForall ? "(\\forall int " : "(\\exists int ";
      out += e->name();
      out += "; ";
      PrintAt(e->arg(0), kCmpPrec, false, out);
      out += " <= ";
      out += e->name();
      out += " && ";
      out += e->name();
      out += " < ";
      PrintAt(e->arg(1), kCmpPrec, false, out);
      out += "; ";
      Print(e->arg(2), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string ToString(const Expr& e) {
  if (!e) return "<null>";
  std::string out;
  Print(e, out);
  return out;
}

}  // namespace invgen
