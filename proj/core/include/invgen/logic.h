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

// Operations on assertions: evaluation, substitution and simplification.

#ifndef INVGEN_LOGIC_H_
#define INVGEN_LOGIC_H_

#include <map>
#include <set>
#include <string>

#include "invgen/expr.h"
#include "invgen/state.h"

namespace invgen {

// Evaluates an int- or array-sorted term. Throws EvalError.
Value Eval(const Expr& e, const State& s);
int64_t EvalInt(const Expr& e, const State& s);
// Evaluates a formula. `&&`, `||` and `==>` short-circuit left to right.
bool EvalFormula(const Formula& f, const State& s);

// Capture-avoiding substitution of `e` for the free occurrences of `x`.
Formula Substitute(const Formula& f, const std::string& x, const Expr& e);
// Simultaneous substitution.
Formula SubstituteAll(const Formula& f,
                      const std::map<std::string, Expr>& replacements);
// Replaces array `a` by `store(a, i, v)` and eliminates the resulting
// read-over-store terms into `ite` form.
Formula SubstituteArray(const Formula& f, const std::string& a, const Expr& i,
                        const Expr& v);
// Rewrites `store(...)[j]` into `ite` and `store(...).length` into the base
// length until no store term remains.
Expr NormalizeStores(const Expr& e);

// Equivalence-preserving rewriting; idempotent.
Formula Simplify(const Formula& f);

// `base` if unused in `avoid`, otherwise `base1`, `base2`, ...
std::string FreshName(const std::string& base,
                      const std::set<std::string>& avoid);

}  // namespace invgen

#endif  // INVGEN_LOGIC_H_
