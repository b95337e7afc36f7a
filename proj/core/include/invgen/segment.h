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

// Splitting a method body into alternating loop-free and loop segments.

#ifndef INVGEN_SEGMENT_H_
#define INVGEN_SEGMENT_H_

#include <string>
#include <vector>

#include "invgen/program.h"

namespace invgen {

struct Segment {
  enum class Kind { kLoopFree, kLoop };
  Kind kind = Kind::kLoopFree;
  // 1-based within its kind: `code N` or `while N`.
  int index = 0;
  // LoopFree: the statements. Loop: exactly the while statement.
  std::vector<Stmt> stmts;

  bool is_loop() const { return kind == Kind::kLoop; }
  const Stmt& loop() const { return stmts.front(); }
  const Expr& guard() const { return loop().guard; }
  const std::vector<Stmt>& body() const { return loop().then_body; }
};

// Always `code 1, while 1, code 2, ..., while L, code L+1`; loop-free
// segments may be empty.
struct SegmentedProgram {
  Program program;
  std::vector<Segment> segments;

  int num_loops() const { return static_cast<int>(segments.size() / 2); }
  const Segment& LoopFree(int index) const { return segments.at(2 * (index - 1)); }
  const Segment& Loop(int index) const { return segments.at(2 * index - 1); }
  // Concatenation of every segment's statements.
  std::vector<Stmt> Flatten() const;
};

// Throws NestedLoopError for a loop that is not at the top level.
SegmentedProgram SegmentProgram(const Program& p);

// The method with `// code N open/close` and `// while N open/close`
// comments around each segment.
std::string RenderMarkers(const SegmentedProgram& sp);

}  // namespace invgen

#endif  // INVGEN_SEGMENT_H_
