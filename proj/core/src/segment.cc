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

#include "invgen/segment.h"

#include "invgen/error.h"

namespace invgen {
namespace {

void RejectInnerLoops(const std::vector<Stmt>& stmts, const char* where) {
  for (const auto& s : stmts) {
    if (s.kind == Stmt::Kind::kWhile) {
      throw NestedLoopError(s.loop_id, "loop " + std::to_string(s.loop_id) +
                                           " is nested inside " + where);
    }
    RejectInnerLoops(s.then_body, where);
    RejectInnerLoops(s.else_body, where);
  }
}

}  // namespace

std::vector<Stmt> SegmentedProgram::Flatten() const {
  std::vector<Stmt> out;
  for (const auto& seg : segments) {
    out.insert(out.end(), seg.stmts.begin(), seg.stmts.end());
  }
  return out;
}

SegmentedProgram SegmentProgram(const Program& p) {
  SegmentedProgram sp;
  sp.program = p;
  Segment current{Segment::Kind::kLoopFree, 1, {}};
  int loops = 0;
  for (const auto& s : p.body) {
    if (s.kind == Stmt::Kind::kWhile) {
      RejectInnerLoops(s.then_body,
                       ("loop " + std::to_string(s.loop_id)).c_str());
      sp.segments.push_back(std::move(current));
      ++loops;
      sp.segments.push_back(Segment{Segment::Kind::kLoop, loops, {s}});
      current = Segment{Segment::Kind::kLoopFree, loops + 1, {}};
      continue;
    }
    if (s.kind == Stmt::Kind::kIf) {
      RejectInnerLoops(s.then_body, "a conditional");
      RejectInnerLoops(s.else_body, "a conditional");
    }
    current.stmts.push_back(s);
  }
  sp.segments.push_back(std::move(current));
  return sp;
}

std::string RenderMarkers(const SegmentedProgram& sp) {
  std::string out = RenderHeader(sp.program);
  out += "{\n";
  for (const auto& seg : sp.segments) {
    std::string tag = (seg.is_loop() ? "while " : "code ") +
                      std::to_string(seg.index);
    out += "  // " + tag + " open\n";
    out += RenderStmts(seg.stmts, 2);
    out += "  // " + tag + " close\n";
  }
  out += "}\n";
  return out;
}

}  // namespace invgen
