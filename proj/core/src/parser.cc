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

#include "invgen/parser.h"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "invgen/error.h"

namespace invgen {
namespace {

enum class Tok { kIdent, kInt, kPunct, kBackslash, kAnnot, kAnnotEnd, kEof };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEof:
      return "end of input";
    case Tok::kAnnot:
      return "'//@'";
    case Tok::kAnnotEnd:
      return "end of annotation";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    bool in_annot = false;
    while (true) {
      SkipSpaceAndComments(in_annot, out);
      if (pos_ >= src_.size()) {
        if (in_annot) out.push_back({Tok::kAnnotEnd, "", Here()});
        out.push_back({Tok::kEof, "", Here()});
        return out;
      }
      if (in_annot && src_[pos_] == '\n') {
        out.push_back({Tok::kAnnotEnd, "", Here()});
        Advance();
        in_annot = false;
        continue;
      }
      if (src_.compare(pos_, 3, "//@") == 0) {
        out.push_back({Tok::kAnnot, "//@", Here()});
        Advance(3);
        in_annot = true;
        continue;
      }
      out.push_back(Next());
    }
  }

 private:
  SourceLoc Here() const { return {line_, col_}; }

  void Advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void SkipSpaceAndComments(bool in_annot, std::vector<Token>& out) {
    (void)out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n' && in_annot) return;
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (src_.compare(pos_, 2, "//") == 0 &&
                 (in_annot || src_.compare(pos_, 3, "//@") != 0)) {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (src_.compare(pos_, 2, "/*") == 0) {
        SourceLoc start = Here();
        Advance(2);
        while (pos_ < src_.size() && src_.compare(pos_, 2, "*/") != 0) {
          Advance();
        }
        if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated comment");
        Advance(2);
      } else {
        return;
      }
    }
  }

  Token Next() {
    SourceLoc loc = Here();
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        Advance();
      }
      return {Tok::kIdent, std::string(src_.substr(start, pos_ - start)), loc};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        Advance();
      }
      return {Tok::kInt, std::string(src_.substr(start, pos_ - start)), loc};
    }
    if (c == '\\') {
      size_t start = pos_;
      Advance();
      while (pos_ < src_.size() &&
             std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
        Advance();
      }
      return {Tok::kBackslash, std::string(src_.substr(start, pos_ - start)),
              loc};
    }
    static const char* kPuncts[] = {"==>", "<==>", "=>", "==", "!=", "<=", ">=",
                                    "&&",  "||",   "<",  ">",  "=",  "!",  "+",
                                    "-",   "*",    "/",  "%",  "(",  ")",  "{",
                                    "}",   "[",    "]",  ";",  ",",  "."};
    std::string best;
    for (const char* p : kPuncts) {
      std::string_view sv(p);
      if (sv.size() > best.size() && src_.compare(pos_, sv.size(), sv) == 0) {
        best = std::string(sv);
      }
    }
    if (best.empty()) {
      throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
    }
    Advance(best.size());
    return {Tok::kPunct, best, loc};
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Binding {
  Sort sort;
  std::string actual;  // name after bound-variable renaming
  bool ghost = false;
};

enum class Mode { kCode, kGhostCode, kSpec };

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program ParseMethod();
  Formula ParseStandaloneFormula(const std::map<std::string, Sort>& scope);
  Expr ParseStandaloneTerm(const std::map<std::string, Sort>& scope);

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& Take() {
    const Token& t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool IsPunct(const char* p, size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kPunct && Peek(ahead).text == p;
  }
  bool IsWord(const char* w, size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kIdent && Peek(ahead).text == w;
  }
  bool AcceptPunct(const char* p) {
    if (!IsPunct(p)) return false;
    Take();
    return true;
  }
  bool AcceptWord(const char* w) {
    if (!IsWord(w)) return false;
    Take();
    return true;
  }
  [[noreturn]] void Fail(const std::string& expected) const {
    throw SyntaxError(Peek().loc,
                      "expected " + expected + ", found " + Describe(Peek()));
  }
  void ExpectPunct(const char* p) {
    if (!AcceptPunct(p)) Fail(std::string("'") + p + "'");
  }
  void ExpectWord(const char* w) {
    if (!AcceptWord(w)) Fail(std::string("'") + w + "'");
  }
  std::string ExpectIdent() {
    if (Peek().kind != Tok::kIdent || IsReserved(Peek().text)) {
      Fail("identifier");
    }
    return Take().text;
  }
  static bool IsReserved(const std::string& s) {
    static const std::set<std::string> kReserved = {
        "method", "requires", "ensures", "int",  "skip",  "if",
        "else",   "while",    "true",    "false", "nondet", "AND",
        "OR",     "NOT"};
    return kReserved.count(s) > 0;
  }

  // Expressions.
  Expr ParseExpr(Mode mode) { return ParseImplies(mode); }
  Expr ParseImplies(Mode mode);
  Expr ParseOr(Mode mode);
  Expr ParseAnd(Mode mode);
  Expr ParseCmp(Mode mode);
  Expr ParseAdd(Mode mode);
  Expr ParseMul(Mode mode);
  Expr ParseUnary(Mode mode);
  Expr ParsePostfix(Mode mode);
  Expr ParsePrimary(Mode mode);
  Expr ParseQuantifier(Mode mode, bool parenthesised);
  Expr ResolveVar(const Token& t, Mode mode);

  // Statements.
  std::vector<Stmt> ParseBlock();
  void ParseStmt(std::vector<Stmt>& out);
  void ParseAnnotation(std::vector<Stmt>& out);
  Expr ParseGuard(bool allow_nondet);
  void Declare(const std::string& name, Sort sort, bool ghost, SourceLoc loc);

  size_t SkipClause();
  Formula ParseClauseAt(size_t start);

  std::string FreshBound(const std::string& base) const;

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::map<std::string, Binding>> scopes_;
  std::set<std::string> all_names_;
  int next_loop_id_ = 1;
  std::vector<std::pair<Formula, SourceLoc>> pending_invariants_;
  Annotations annotations_;
};

std::string Parser::FreshBound(const std::string& base) const {
  auto taken = [&](const std::string& n) {
    if (all_names_.count(n) || IsReserved(n)) return true;
    for (const auto& s : scopes_) {
      if (s.count(n)) return true;
      for (const auto& [k, b] : s) {
        if (b.actual == n) return true;
      }
    }
    return false;
  };
  if (!taken(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

Expr Parser::ResolveVar(const Token& t, Mode mode) {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(t.text);
    if (found == it->end()) continue;
    if (found->second.ghost && mode == Mode::kCode) {
      throw TypeError(t.loc.ToString() + ": ghost variable '" + t.text +
                          "' used in program code",
                      t.text);
    }
    return Var(found->second.actual, found->second.sort);
  }
  throw TypeError(t.loc.ToString() + ": undeclared identifier '" + t.text + "'",
                  t.text);
}

Expr Parser::ParseImplies(Mode mode) {
  Expr lhs = ParseOr(mode);
  if (IsPunct("==>") || IsPunct("=>")) {
    if (mode != Mode::kSpec) {
      throw SyntaxError(Peek().loc, "implication is only allowed in assertions");
    }
    Take();
    Expr rhs = ParseImplies(mode);
    return Implies(lhs, rhs);
  }
  if (IsPunct("<==>")) {
    if (mode != Mode::kSpec) {
      throw SyntaxError(Peek().loc, "equivalence is only allowed in assertions");
    }
    Take();
    Expr rhs = ParseImplies(mode);
    return And(Implies(lhs, rhs), Implies(rhs, lhs));
  }
  return lhs;
}

Expr Parser::ParseOr(Mode mode) {
  std::vector<Expr> parts{ParseAnd(mode)};
  while (IsPunct("||") || IsWord("OR")) {
    Take();
    parts.push_back(ParseAnd(mode));
  }
  return parts.size() == 1 ? parts[0] : Or(std::move(parts));
}

Expr Parser::ParseAnd(Mode mode) {
  std::vector<Expr> parts{ParseCmp(mode)};
  while (IsPunct("&&") || IsWord("AND")) {
    Take();
    parts.push_back(ParseCmp(mode));
  }
  return parts.size() == 1 ? parts[0] : And(std::move(parts));
}

Expr Parser::ParseCmp(Mode mode) {
  Expr lhs = ParseAdd(mode);
  static const std::pair<const char*, Kind> kOps[] = {
      {"==", Kind::kEq}, {"!=", Kind::kNe}, {"<", Kind::kLt},
      {"<=", Kind::kLe}, {">", Kind::kGt},  {">=", Kind::kGe}};
  for (const auto& [text, kind] : kOps) {
    if (IsPunct(text)) {
      Take();
      Expr rhs = ParseAdd(mode);
      for (const auto& [t2, k2] : kOps) {
        if (IsPunct(t2)) {
          throw SyntaxError(Peek().loc, "comparisons do not chain");
        }
      }
      return Compare(kind, lhs, rhs);
    }
  }
  return lhs;
}

Expr Parser::ParseAdd(Mode mode) {
  Expr lhs = ParseMul(mode);
  while (IsPunct("+") || IsPunct("-")) {
    Kind k = Take().text == "+" ? Kind::kAdd : Kind::kSub;
    lhs = Arith(k, lhs, ParseMul(mode));
  }
  return lhs;
}

Expr Parser::ParseMul(Mode mode) {
  Expr lhs = ParseUnary(mode);
  while (IsPunct("*") || IsPunct("/") || IsPunct("%")) {
    const std::string& op = Take().text;
    Kind k = op == "*" ? Kind::kMul : op == "/" ? Kind::kDiv : Kind::kMod;
    lhs = Arith(k, lhs, ParseUnary(mode));
  }
  return lhs;
}

Expr Parser::ParseUnary(Mode mode) {
  if (IsPunct("-")) {
    Take();
    if (Peek().kind == Tok::kInt && !IsPunct("[", 1) && !IsPunct(".", 1)) {
      const Token& t = Take();
      try {
        return IntLit(-std::stoll(t.text));
      } catch (const std::out_of_range&) {
        throw SyntaxError(t.loc, "integer literal out of range");
      }
    }
    return Neg(ParseUnary(mode));
  }
  if (IsPunct("!") || IsWord("NOT")) {
    Take();
    return Not(ParseUnary(mode));
  }
  return ParsePostfix(mode);
}

Expr Parser::ParsePostfix(Mode mode) {
  Expr e = ParsePrimary(mode);
  while (true) {
    if (IsPunct("[")) {
      SourceLoc loc = Take().loc;
      if (e->sort() != Sort::kArray) {
        throw TypeError(loc.ToString() + ": indexing a non-array");
      }
      Expr idx = ParseExpr(mode);
      ExpectPunct("]");
      e = Select(e, idx);
    } else if (IsPunct(".")) {
      SourceLoc loc = Take().loc;
      if (!AcceptWord("length")) Fail("'length'");
      if (e->sort() != Sort::kArray) {
        throw TypeError(loc.ToString() + ": .length of a non-array");
      }
      e = Length(e);
    } else {
      return e;
    }
  }
}

Expr Parser::ParsePrimary(Mode mode) {
  const Token& t = Peek();
  if (t.kind == Tok::kInt) {
    Take();
    try {
      return IntLit(std::stoll(t.text));
    } catch (const std::out_of_range&) {
      throw SyntaxError(t.loc, "integer literal out of range");
    }
  }
  if (t.kind == Tok::kBackslash) {
    if (mode != Mode::kSpec) {
      throw SyntaxError(t.loc, "quantifiers are only allowed in assertions");
    }
    return ParseQuantifier(mode, false);
  }
  if (t.kind == Tok::kPunct && t.text == "(") {
    if (Peek(1).kind == Tok::kBackslash) {
      if (mode != Mode::kSpec) {
        throw SyntaxError(Peek(1).loc,
                          "quantifiers are only allowed in assertions");
      }
      Take();
      Expr q = ParseQuantifier(mode, true);
      ExpectPunct(")");
      return q;
    }
    Take();
    Expr e = ParseExpr(mode);
    ExpectPunct(")");
    return e;
  }
  if (t.kind == Tok::kIdent) {
    if (t.text == "true") {
      Take();
      return True();
    }
    if (t.text == "false") {
      Take();
      return False();
    }
    if (t.text == "nondet") {
      Take();
      ExpectPunct("(");
      ExpectPunct(")");
      return Nondet();
    }
    if (IsReserved(t.text)) Fail("expression");
    Token copy = Take();
    return ResolveVar(copy, mode);
  }
  Fail("expression");
}

Expr Parser::ParseQuantifier(Mode mode, bool parenthesised) {
  const Token& q = Take();
  Kind kind;
  if (q.text == "\\forall") {
    kind = Kind::kForall;
  } else if (q.text == "\\exists") {
    kind = Kind::kExists;
  } else {
    throw SyntaxError(q.loc, "unknown quantifier " + q.text);
  }
  AcceptWord("int");
  SourceLoc var_loc = Peek().loc;
  std::string var = ExpectIdent();
  ExpectPunct(";");
  std::string actual = FreshBound(var);
  scopes_.push_back({{var, Binding{Sort::kInt, actual, false}}});
  Expr range = ParseExpr(mode);
  ExpectPunct(";");
  Expr body = parenthesised ? ParseExpr(mode) : ParseExpr(mode);
  scopes_.pop_back();

  Expr lo, hi;
  std::vector<Expr> extra;
  auto is_k = [&](const Expr& e) {
    return e->kind() == Kind::kVar && e->name() == actual;
  };
  auto mentions_k = [&](const Expr& e) { return FreeVars(e).count(actual) > 0; };
  for (const auto& c : Conjuncts(range)) {
    if (c->is_comparison() && c->kind() != Kind::kEq &&
        c->kind() != Kind::kNe) {
      const Expr& l = c->arg(0);
      const Expr& r = c->arg(1);
      Kind k = c->kind();
      // Normalise to `k op bound`.
      Expr bound;
      Kind rel = k;
      if (is_k(l) && !mentions_k(r)) {
        bound = r;
      } else if (is_k(r) && !mentions_k(l)) {
        bound = l;
        rel = k == Kind::kLt   ? Kind::kGt
              : k == Kind::kLe ? Kind::kGe
              : k == Kind::kGt ? Kind::kLt
                               : Kind::kLe;
      }
      if (bound) {
        if (!lo && (rel == Kind::kGe || rel == Kind::kGt)) {
          lo = rel == Kind::kGe ? bound : Add(bound, IntLit(1));
          continue;
        }
        if (!hi && (rel == Kind::kLt || rel == Kind::kLe)) {
          hi = rel == Kind::kLt ? bound : Add(bound, IntLit(1));
          continue;
        }
      }
    }
    extra.push_back(c);
  }
  if (!lo || !hi) {
    throw SyntaxError(var_loc, "quantifier over '" + var +
                                   "' needs a bounded range lo <= " + var +
                                   " && " + var + " < hi");
  }
  if (!extra.empty()) {
    Expr guard = And(extra);
    body = kind == Kind::kForall ? Implies(guard, body) : And(guard, body);
  }
  return Quantifier(kind, actual, lo, hi, body);
}

void Parser::Declare(const std::string& name, Sort sort, bool ghost,
                     SourceLoc loc) {
  for (const auto& s : scopes_) {
    if (s.count(name)) {
      throw TypeError(loc.ToString() + ": duplicate declaration of '" + name +
                          "'",
                      name);
    }
  }
  scopes_.front()[name] = Binding{sort, name, ghost};
  all_names_.insert(name);
}

Expr Parser::ParseGuard(bool allow_nondet) {
  SourceLoc loc = Peek().loc;
  Expr g = ParseExpr(Mode::kCode);
  if (g->sort() != Sort::kBool) {
    throw TypeError(loc.ToString() + ": guard must be boolean");
  }
  bool bare_nondet = g->kind() == Kind::kNondet;
  if ((bare_nondet && !allow_nondet) ||
      (!bare_nondet && ContainsKind(g, Kind::kNondet))) {
    throw TypeError(loc.ToString() +
                    ": nondet() is only allowed as a whole if guard");
  }
  return g;
}

std::vector<Stmt> Parser::ParseBlock() {
  ExpectPunct("{");
  std::vector<Stmt> out;
  while (!IsPunct("}")) {
    if (Peek().kind == Tok::kEof) Fail("'}'");
    ParseStmt(out);
  }
  Take();
  if (!pending_invariants_.empty()) {
    throw SyntaxError(pending_invariants_.front().second,
                      "loop_invariant must precede a while loop");
  }
  return out;
}

void Parser::ParseAnnotation(std::vector<Stmt>& out) {
  Take();  // //@
  while (Peek().kind != Tok::kAnnotEnd) {
    SourceLoc loc = Peek().loc;
    if (AcceptWord("loop_invariant") || AcceptWord("maintaining")) {
      Formula f = ParseExpr(Mode::kSpec);
      if (f->sort() != Sort::kBool) {
        throw TypeError(loc.ToString() + ": loop_invariant must be boolean");
      }
      pending_invariants_.emplace_back(f, loc);
      ExpectPunct(";");
    } else if (AcceptWord("ghost")) {
      ExpectWord("int");
      SourceLoc name_loc = Peek().loc;
      std::string name = ExpectIdent();
      ExpectPunct("=");
      Expr init = ParseExpr(Mode::kGhostCode);
      if (init->sort() != Sort::kInt) {
        throw TypeError(name_loc.ToString() + ": ghost initialiser must be int");
      }
      ExpectPunct(";");
      Declare(name, Sort::kInt, true, name_loc);
      Stmt s = Stmt::GhostDecl(name, init);
      s.loc = loc;
      out.push_back(std::move(s));
    } else if (AcceptWord("set")) {
      Token name_tok = Peek();
      std::string name = ExpectIdent();
      Expr target = ResolveVar(name_tok, Mode::kGhostCode);
      bool is_ghost = false;
      for (const auto& s : scopes_) {
        auto it = s.find(name);
        if (it != s.end() && it->second.ghost) is_ghost = true;
      }
      if (!is_ghost) {
        throw TypeError(name_tok.loc.ToString() + ": set target '" + name +
                            "' is not a ghost variable",
                        name);
      }
      ExpectPunct("=");
      Expr value = ParseExpr(Mode::kGhostCode);
      if (value->sort() != Sort::kInt) {
        throw TypeError(name_tok.loc.ToString() + ": ghost value must be int");
      }
      ExpectPunct(";");
      Stmt s = Stmt::GhostSet(name, value);
      s.loc = loc;
      out.push_back(std::move(s));
    } else if (AcceptWord("decreases") || AcceptWord("loop_variant") ||
               AcceptWord("loop_decreases")) {
      ParseExpr(Mode::kSpec);
      ExpectPunct(";");
    } else {
      Fail("annotation keyword");
    }
  }
  Take();  // end of annotation line
}

void Parser::ParseStmt(std::vector<Stmt>& out) {
  const Token& t = Peek();
  SourceLoc loc = t.loc;
  if (t.kind == Tok::kAnnot) {
    ParseAnnotation(out);
    return;
  }
  if (!pending_invariants_.empty() && !IsWord("while")) {
    throw SyntaxError(pending_invariants_.front().second,
                      "loop_invariant must precede a while loop");
  }
  if (AcceptWord("skip")) {
    ExpectPunct(";");
    Stmt s = Stmt::Skip();
    s.loc = loc;
    out.push_back(s);
    return;
  }
  if (AcceptWord("int")) {
    if (IsPunct("[")) {
      throw SyntaxError(Peek().loc, "local arrays are not supported");
    }
    SourceLoc name_loc = Peek().loc;
    std::string name = ExpectIdent();
    ExpectPunct("=");
    Expr value = ParseExpr(Mode::kCode);
    if (value->sort() != Sort::kInt) {
      throw TypeError(name_loc.ToString() + ": initialiser of '" + name +
                          "' must be int",
                      name);
    }
    if (ContainsKind(value, Kind::kNondet)) {
      throw TypeError(name_loc.ToString() +
                      ": nondet() is only allowed as a whole if guard");
    }
    ExpectPunct(";");
    Declare(name, Sort::kInt, false, name_loc);
    Stmt s = Stmt::Assign(name, value, true);
    s.loc = loc;
    out.push_back(s);
    return;
  }
  if (AcceptWord("if")) {
    ExpectPunct("(");
    Expr guard = ParseGuard(true);
    ExpectPunct(")");
    std::vector<Stmt> then_body = ParseBlock();
    std::vector<Stmt> else_body;
    bool has_else = false;
    if (AcceptWord("else")) {
      has_else = true;
      if (IsWord("if")) {
        ParseStmt(else_body);
      } else {
        else_body = ParseBlock();
      }
    }
    Stmt s = Stmt::If(guard, std::move(then_body), std::move(else_body));
    s.has_else = has_else;
    s.loc = loc;
    out.push_back(std::move(s));
    return;
  }
  if (AcceptWord("while")) {
    auto invariants = std::move(pending_invariants_);
    pending_invariants_.clear();
    int id = next_loop_id_++;
    ExpectPunct("(");
    Expr guard = ParseGuard(false);
    ExpectPunct(")");
    std::vector<Stmt> body = ParseBlock();
    if (!invariants.empty()) {
      auto& slot = annotations_[id];
      for (auto& [f, l] : invariants) slot.push_back(f);
    }
    Stmt s = Stmt::While(guard, std::move(body), id);
    s.loc = loc;
    out.push_back(std::move(s));
    return;
  }
  if (t.kind == Tok::kIdent && !IsReserved(t.text)) {
    Token name_tok = Take();
    Expr target = ResolveVar(name_tok, Mode::kCode);
    if (AcceptPunct("[")) {
      if (target->sort() != Sort::kArray) {
        throw TypeError(name_tok.loc.ToString() + ": '" + name_tok.text +
                            "' is not an array",
                        name_tok.text);
      }
      Expr index = ParseExpr(Mode::kCode);
      ExpectPunct("]");
      ExpectPunct("=");
      Expr value = ParseExpr(Mode::kCode);
      ExpectPunct(";");
      if (index->sort() != Sort::kInt || value->sort() != Sort::kInt ||
          ContainsKind(index, Kind::kNondet) ||
          ContainsKind(value, Kind::kNondet)) {
        throw TypeError(name_tok.loc.ToString() + ": ill-typed array store",
                        name_tok.text);
      }
      Stmt s = Stmt::Store(name_tok.text, index, value);
      s.loc = loc;
      out.push_back(std::move(s));
      return;
    }
    ExpectPunct("=");
    if (target->sort() != Sort::kInt) {
      throw TypeError(name_tok.loc.ToString() + ": cannot assign to array '" +
                          name_tok.text + "'",
                      name_tok.text);
    }
    Expr value = ParseExpr(Mode::kCode);
    if (value->sort() != Sort::kInt || ContainsKind(value, Kind::kNondet)) {
      throw TypeError(name_tok.loc.ToString() + ": ill-typed assignment to '" +
                          name_tok.text + "'",
                      name_tok.text);
    }
    ExpectPunct(";");
    Stmt s = Stmt::Assign(name_tok.text, value);
    s.loc = loc;
    out.push_back(std::move(s));
    return;
  }
  Fail("statement");
}

size_t Parser::SkipClause() {
  size_t start = pos_;
  int depth = 0;
  // A bare quantifier at depth 0 owns the next two semicolons.
  int owned = 0;
  while (true) {
    const Token& t = Peek();
    if (t.kind == Tok::kEof) Fail("'{'");
    if (depth == 0 && (t.text == "\\forall" || t.text == "\\exists")) {
      owned += 2;
    }
    if (t.kind == Tok::kPunct) {
      if (t.text == "(") ++depth;
      if (t.text == ")") --depth;
      if (depth == 0 && t.text == ";" && owned > 0) {
        --owned;
        Take();
        continue;
      }
      if (depth == 0 && (t.text == ";" || t.text == "{")) break;
    }
    if (depth == 0 && (IsWord("requires") || IsWord("ensures"))) break;
    Take();
  }
  if (pos_ == start) Fail("formula");
  AcceptPunct(";");
  return start;
}

Formula Parser::ParseClauseAt(size_t start) {
  size_t saved = pos_;
  pos_ = start;
  SourceLoc loc = Peek().loc;
  Formula f = ParseExpr(Mode::kSpec);
  if (!IsPunct(";") && !IsPunct("{") && !IsWord("requires") &&
      !IsWord("ensures")) {
    Fail("end of clause");
  }
  if (f->sort() != Sort::kBool) {
    throw TypeError(loc.ToString() + ": clause must be boolean");
  }
  pos_ = saved;
  return f;
}

Program Parser::ParseMethod() {
  Program p;
  ExpectWord("method");
  p.name = ExpectIdent();
  scopes_.emplace_back();
  ExpectPunct("(");
  if (!IsPunct(")")) {
    do {
      ExpectWord("int");
      Sort sort = Sort::kInt;
      if (AcceptPunct("[")) {
        ExpectPunct("]");
        sort = Sort::kArray;
      }
      SourceLoc loc = Peek().loc;
      std::string name = ExpectIdent();
      Declare(name, sort, false, loc);
      p.params.push_back({name, sort});
    } while (AcceptPunct(","));
  }
  ExpectPunct(")");

  std::vector<size_t> requires_at, ensures_at;
  while (true) {
    if (AcceptWord("requires")) {
      requires_at.push_back(SkipClause());
    } else if (AcceptWord("ensures")) {
      ensures_at.push_back(SkipClause());
    } else {
      break;
    }
  }

  // The precondition sees parameters only.
  std::vector<Formula> pres;
  for (size_t at : requires_at) pres.push_back(ParseClauseAt(at));

  p.body = ParseBlock();
  if (Peek().kind != Tok::kEof) Fail("end of input");

  std::vector<Formula> posts;
  for (size_t at : ensures_at) posts.push_back(ParseClauseAt(at));
  p.pre = pres.empty() ? True() : And(pres);
  p.post = posts.empty() ? True() : And(posts);
  p.annotations = std::move(annotations_);
  return p;
}

Formula Parser::ParseStandaloneFormula(
    const std::map<std::string, Sort>& scope) {
  std::map<std::string, Binding> frame;
  for (const auto& [name, sort] : scope) {
    frame[name] = Binding{sort, name, false};
    all_names_.insert(name);
  }
  scopes_.push_back(std::move(frame));
  while (Peek().kind == Tok::kAnnot) Take();
  AcceptWord("loop_invariant");
  SourceLoc loc = Peek().loc;
  Formula f = ParseExpr(Mode::kSpec);
  AcceptPunct(";");
  while (Peek().kind == Tok::kAnnotEnd) Take();
  if (Peek().kind != Tok::kEof) Fail("end of formula");
  if (f->sort() != Sort::kBool) {
    throw TypeError(loc.ToString() + ": formula must be boolean");
  }
  return f;
}

Expr Parser::ParseStandaloneTerm(const std::map<std::string, Sort>& scope) {
  std::map<std::string, Binding> frame;
  for (const auto& [name, sort] : scope) {
    frame[name] = Binding{sort, name, false};
    all_names_.insert(name);
  }
  scopes_.push_back(std::move(frame));
  SourceLoc loc = Peek().loc;
  Expr e = ParseExpr(Mode::kSpec);
  if (Peek().kind != Tok::kEof) Fail("end of expression");
  if (e->sort() != Sort::kInt) {
    throw TypeError(loc.ToString() + ": expression must be int");
  }
  return e;
}

}  // namespace

Program ParseProgram(std::string_view text) {
  Parser parser(Lexer(text).Run());
  return parser.ParseMethod();
}

Program ParseProgramFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseProgram(buf.str());
}

Formula ParseFormula(std::string_view text,
                     const std::map<std::string, Sort>& scope) {
  Parser parser(Lexer(text).Run());
  return parser.ParseStandaloneFormula(scope);
}

Expr ParseTerm(std::string_view text,
               const std::map<std::string, Sort>& scope) {
  Parser parser(Lexer(text).Run());
  return parser.ParseStandaloneTerm(scope);
}

}  // namespace invgen
