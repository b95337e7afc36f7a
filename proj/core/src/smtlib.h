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

// SMT-LIB text: term translation, reply parsing and model extraction.

#ifndef INVGEN_SRC_SMTLIB_H_
#define INVGEN_SRC_SMTLIB_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invgen/expr.h"
#include "invgen/state.h"

namespace invgen {

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> list;

  std::string ToString() const;
};

// Parses a sequence of s-expressions. Throws ProtocolError.
std::vector<SExpr> ParseSExprs(const std::string& text);

// `|name|`
std::string QuoteSymbol(const std::string& name);
std::string LengthSymbol(const std::string& array);
std::string TranslateTerm(const Expr& e);

// Builds a state for `vars` from a `get-model` reply. Throws ProtocolError.
State ExtractModel(const SExpr& model,
                   const std::set<std::pair<std::string, Sort>>& vars);

}  // namespace invgen

#endif  // INVGEN_SRC_SMTLIB_H_
