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

// Immutable expression trees shared by program code and assertions.
//
// A single node type covers both MiniImp expressions and the assertion
// language: program code uses the quantifier-free, store-free fragment, while
// formulas may additionally contain implications, bounded quantifiers, `ite`
// and functional array updates. Nodes are reference counted and never mutated
// after construction, so trees can be shared freely across threads.

#ifndef INVGEN_EXPR_H_
#define INVGEN_EXPR_H_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace invgen {

enum class Sort { kInt, kBool, kArray };

enum class Kind {
  kIntLit,
  kBoolLit,
  kVar,
  kSelect,   // args: array, index
  kStore,    // args: array, index, value (array sorted)
  kLength,   // args: array
  kNeg,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kNot,
  kAnd,      // n-ary
  kOr,       // n-ary
  kImplies,
  kIte,      // args: cond, then, else (int sorted)
  kForall,   // name: bound var; args: lo, hi, body; range is [lo, hi)
  kExists,
  kNondet,
};

const char* SortName(Sort sort);

class Node;
using Expr = std::shared_ptr<const Node>;
// Formulas are boolean-sorted expressions.
using Formula = Expr;

class Node {
 public:
  Node(Kind kind, Sort sort, int64_t value, std::string name,
       std::vector<Expr> args)
      : kind_(kind),
        sort_(sort),
        value_(value),
        name_(std::move(name)),
        args_(std::move(args)) {}

  Kind kind() const { return kind_; }
  Sort sort() const { return sort_; }
  int64_t value() const { return value_; }
  const std::string& name() const { return name_; }
  const std::vector<Expr>& args() const { return args_; }
  const Expr& arg(size_t i) const { return args_.at(i); }

  bool is_int_lit() const { return kind_ == Kind::kIntLit; }
  bool is_bool_lit() const { return kind_ == Kind::kBoolLit; }
  bool is_true() const { return kind_ == Kind::kBoolLit && value_ != 0; }
  bool is_false() const { return kind_ == Kind::kBoolLit && value_ == 0; }
  bool is_quantifier() const {
    return kind_ == Kind::kForall || kind_ == Kind::kExists;
  }
  bool is_comparison() const;
  bool is_arith() const;

 private:
  Kind kind_;
  Sort sort_;
  int64_t value_;
  std::string name_;
  std::vector<Expr> args_;
};

// Constructors. They check sorts and throw TypeError on mismatch but do not
// simplify; structure is preserved exactly so printing round-trips.
Expr IntLit(int64_t v);
Expr BoolLit(bool v);
Expr True();
Expr False();
Expr Var(const std::string& name, Sort sort = Sort::kInt);
Expr Select(Expr array, Expr index);
Expr Store(Expr array, Expr index, Expr value);
Expr Length(Expr array);
Expr Neg(Expr a);
Expr Arith(Kind kind, Expr a, Expr b);
Expr Add(Expr a, Expr b);
Expr Sub(Expr a, Expr b);
Expr Mul(Expr a, Expr b);
Expr Div(Expr a, Expr b);
Expr Mod(Expr a, Expr b);
Expr Compare(Kind kind, Expr a, Expr b);
Expr Eq(Expr a, Expr b);
Expr Ne(Expr a, Expr b);
Expr Lt(Expr a, Expr b);
Expr Le(Expr a, Expr b);
Expr Gt(Expr a, Expr b);
Expr Ge(Expr a, Expr b);
Expr Not(Expr a);
Expr And(std::vector<Expr> args);
Expr And(Expr a, Expr b);
Expr Or(std::vector<Expr> args);
Expr Or(Expr a, Expr b);
Expr Implies(Expr a, Expr b);
Expr Ite(Expr cond, Expr then_term, Expr else_term);
Expr Forall(const std::string& var, Expr lo, Expr hi, Expr body);
Expr Exists(const std::string& var, Expr lo, Expr hi, Expr body);
Expr Quantifier(Kind kind, const std::string& var, Expr lo, Expr hi,
                Expr body);
Expr Nondet();

// Rebuilds `e` with new children, keeping kind, sort, value and name.
Expr WithArgs(const Expr& e, std::vector<Expr> args);

// Structural equality (names, literals, shape).
bool Equal(const Expr& a, const Expr& b);
// Equality up to consistent renaming of bound variables.
bool AlphaEqual(const Expr& a, const Expr& b);

// Free identifiers (bound quantifier variables excluded). Array variables and
// scalar variables are both reported by name.
std::set<std::string> FreeVars(const Expr& e);
// Free variables together with their sorts.
std::set<std::pair<std::string, Sort>> FreeVarsSorted(const Expr& e);
// Every identifier occurring anywhere, bound or free.
std::set<std::string> AllNames(const Expr& e);

// Splits a top-level conjunction into its conjuncts (a non-conjunction yields
// itself; `true` yields nothing).
std::vector<Formula> Conjuncts(const Formula& f);

// Surface syntax, minimal parentheses. Quantifiers print in JML style:
// `(\forall int k; lo <= k && k < hi; body)`.
std::string ToString(const Expr& e);

bool ContainsKind(const Expr& e, Kind kind);

}  // namespace invgen

#endif  // INVGEN_EXPR_H_
