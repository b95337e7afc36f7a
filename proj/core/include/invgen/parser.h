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

#ifndef INVGEN_PARSER_H_
#define INVGEN_PARSER_H_

#include <map>
#include <string>
#include <string_view>

#include "invgen/expr.h"
#include "invgen/program.h"

namespace invgen {

// Parses one MiniImp method. Throws SyntaxError or TypeError.
Program ParseProgram(std::string_view text);
Program ParseProgramFile(const std::string& path);

// Parses an assertion over the given identifiers. Besides the native `&&`,
// `||`, `!` and `==>`, the spellings `AND`, `OR`, `NOT` and `=>` are
// accepted.
Formula ParseFormula(std::string_view text,
                     const std::map<std::string, Sort>& scope);

// Parses an integer-sorted expression over the given identifiers.
Expr ParseTerm(std::string_view text,
               const std::map<std::string, Sort>& scope);

}  // namespace invgen

#endif  // INVGEN_PARSER_H_
