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

// Weakest preconditions of loop-free MiniImp code.
//
// Evaluation safety is part of the result: every division conjoins a non-zero
// divisor condition and every array access conjoins its bounds, so the WP
// holds exactly in the states from which execution succeeds and establishes
// the postcondition.

#ifndef INVGEN_WP_H_
#define INVGEN_WP_H_

#include <vector>

#include "invgen/expr.h"
#include "invgen/program.h"
#include "invgen/segment.h"

namespace invgen {

// Throws LoopEncounteredError on a while statement.
Formula WpStmt(const Stmt& s, const Formula& q);
Formula WpStmts(const std::vector<Stmt>& stmts, const Formula& q);
Formula WpSegment(const Segment& seg, const Formula& q);

// Condition under which evaluating `e` raises no runtime error.
Formula SafeCondition(const Expr& e);

}  // namespace invgen

#endif  // INVGEN_WP_H_
