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

#include <gtest/gtest.h>

#include <regex>

#include "invgen/bench.h"
#include "invgen/error.h"
#include "invgen/parser.h"
#include "invgen/segment.h"
#include "test_support.h"

namespace invgen {
namespace {

int CountOf(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST(Segment, SingleLoopLayout) {
  Program p = ParseProgram(R"(method m(int n)
{
  int i = 0;
  while (i < n) {
    i = i + 1;
  }
  int r = i;
}
)");
  SegmentedProgram sp = SegmentProgram(p);
  ASSERT_EQ(sp.segments.size(), 3u);
  EXPECT_EQ(sp.num_loops(), 1);
  EXPECT_EQ(sp.LoopFree(1).stmts.size(), 1u);
  EXPECT_TRUE(sp.Loop(1).is_loop());
  EXPECT_EQ(sp.LoopFree(2).stmts.size(), 1u);
  EXPECT_EQ(sp.LoopFree(2).stmts[0].target, "r");
}

TEST(Segment, BackToBackLoopsGetEmptySegment) {
  Program p = ParseProgram(R"(method m(int n)
{
  int i = 0;
  while (i < n) {
    i = i + 1;
  }
  while (i > 0) {
    i = i - 1;
  }
}
)");
  SegmentedProgram sp = SegmentProgram(p);
  ASSERT_EQ(sp.segments.size(), 5u);
  EXPECT_TRUE(sp.LoopFree(2).stmts.empty());
  EXPECT_TRUE(sp.LoopFree(3).stmts.empty());
  std::string view = RenderMarkers(sp);
  EXPECT_NE(view.find("  // code 2 open\n  // code 2 close\n"),
            std::string::npos);
}

TEST(Segment, NestedLoopRejected) {
  Program p = ParseProgram(R"(method m(int n)
{
  int i = 0;
  while (i < n) {
    int j = 0;
    while (j < n) {
      j = j + 1;
    }
    i = i + 1;
  }
}
)");
  try {
    SegmentProgram(p);
    FAIL() << "expected NestedLoopError";
  } catch (const NestedLoopError& e) {
    EXPECT_EQ(e.loop_id(), 2);
  }
}

TEST(Segment, MarkerOrder) {
  SegmentedProgram sp =
      SegmentProgram(testing::LoadCorpusProgram("single-loop/sum"));
  std::string view = RenderMarkers(sp);
  size_t a = view.find("// code 1 open");
  size_t b = view.find("// code 1 close");
  size_t c = view.find("// while 1 open");
  size_t d = view.find("// while 1 close");
  ASSERT_NE(a, std::string::npos);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_LT(c, d);
}

TEST(Segment, CorpusReconstructionAndMarkers) {
  Corpus corpus = LoadCorpus(testing::CorpusDir());
  for (const auto& e : corpus.entries) {
    SegmentedProgram sp = SegmentProgram(e.program);
    EXPECT_TRUE(StmtsEqual(sp.Flatten(), e.program.body)) << e.id;
    int loops = e.program.NumLoops();
    std::string view = RenderMarkers(sp);
    EXPECT_EQ(CountOf(view, "// while ") / 2, loops) << e.id;
    EXPECT_EQ(CountOf(view, "// code ") / 2, loops + 1) << e.id;
    // Dropping the markers gives back the same method.
    std::string stripped =
        std::regex_replace(view, std::regex(R"( *// (code|while) \d+ (open|close)\n)"), "");
    Program again = ParseProgram(stripped);
    EXPECT_TRUE(SameCode(again, e.program)) << e.id;
  }
}

}  // namespace
}  // namespace invgen
