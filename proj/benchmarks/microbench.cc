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

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "invgen/bench.h"
#include "invgen/generate.h"
#include "invgen/logic.h"
#include "invgen/parser.h"
#include "invgen/segment.h"
#include "invgen/solver.h"
#include "invgen/wp.h"

namespace invgen {
namespace {

Program Corpus(const std::string& id) {
  return ParseProgramFile(std::string(INVGEN_SOURCE_DIR) + "/corpus/" + id + ".imp");
}

void BM_ParseCorpusProgram(benchmark::State& state) {
  std::string text = RenderProgram(Corpus("multi-loop/pipeline"));
  for (auto _ : state) benchmark::DoNotOptimize(ParseProgram(text));
}
BENCHMARK(BM_ParseCorpusProgram);

void BM_WpLoopBody(benchmark::State& state) {
  Program p = Corpus("other/reverse");
  SegmentedProgram sp = SegmentProgram(p);
  Formula inv = ParseFormula(
      "0 <= i && i <= n && (\\forall int k; 0 <= k && k < i; b[k] == a[n - 1 - k])",
      p.Scope());
  for (auto _ : state) benchmark::DoNotOptimize(WpStmts(sp.Loop(1).body(), inv));
}
BENCHMARK(BM_WpLoopBody);

void BM_Simplify(benchmark::State& state) {
  std::map<std::string, Sort> scope{{"x", Sort::kInt}, {"y", Sort::kInt}, {"n", Sort::kInt}};
  Formula f = ParseFormula(
      "(x + 0 <= y * 1 && true) || !(!(x < n)) && (x - x == 0 ==> y + 1 > y) && 2 * 3 == 6",
      scope);
  for (auto _ : state) benchmark::DoNotOptimize(Simplify(f));
}
BENCHMARK(BM_Simplify);

void BM_TemplateGenerate(benchmark::State& state) {
  static const char* kIds[] = {"single-loop/sum", "array-forall/copy", "array-exists/max_witness"};
  Program p = Corpus(kIds[state.range(0)]);
  auto sp = std::make_shared<SegmentedProgram>(SegmentProgram(p));
  GenerationContext ctx = MakeGenerationContext(sp, 1, p.post);
  TemplateGenerator gen;
  for (auto _ : state) benchmark::DoNotOptimize(gen.Generate(ctx));
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_TemplateGenerate)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BoundedCheck(benchmark::State& state) {
  std::map<std::string, Sort> scope{{"i", Sort::kInt}, {"n", Sort::kInt}, {"a", Sort::kArray}};
  Formula ante = ParseFormula("0 <= i && i < n && n <= a.length", scope);
  Formula cons = ParseFormula("a[i] == a[i]", scope);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BoundedCheck(ante, cons, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BoundedCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PassAtK(benchmark::State& state) {
  for (auto _ : state) {
    double sum = 0;
    for (int c = 0; c <= 60; ++c) sum += PassAtK(60, c, 30);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_PassAtK);

}  // namespace
}  // namespace invgen

BENCHMARK_MAIN();
