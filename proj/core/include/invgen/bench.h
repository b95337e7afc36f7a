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

// Corpus loading, the multi-run experiment driver, metrics and reports.

#ifndef INVGEN_BENCH_H_
#define INVGEN_BENCH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "invgen/llm.h"
#include "invgen/program.h"
#include "invgen/solver.h"

namespace invgen {

// single-loop, array-forall, multi-loop, noisy, random-branch,
// array-exists, other.
const std::vector<std::string>& CorpusCategories();

struct CorpusEntry {
  // `<category>/<name>`
  std::string id;
  std::string category;
  std::string path;
  bool expected_verifiable = true;
  bool hard = false;
  Program program;
};

struct Corpus {
  std::string root;
  std::vector<CorpusEntry> entries;
};

// Reads `<dir>/manifest`: one `<category>/<name>.imp verifiable|unverifiable
// [hard]` line per program; `#` starts a comment. Throws Error on unknown
// categories, missing files and parse failures.
Corpus LoadCorpus(const std::string& dir);

enum class Method { kAdhoc, kNeuroInvStar, kNeuroInv };
const char* MethodName(Method m);
// Throws Error for an unknown name.
Method ParseMethod(const std::string& name);

enum class FailureStage { kNone, kRefinement, kRepair };
const char* FailureStageName(FailureStage s);

struct RunRecord {
  std::string program;
  std::string category;
  int run = 1;
  Method method = Method::kNeuroInv;
  bool success = false;
  int refinement_iters = 0;
  int repair_iters = 0;
  double wall_ms = 0;
  FailureStage failure_stage = FailureStage::kNone;
  int implication1_failures = 0;
  int implication2_failures = 0;
  std::string note;
};

enum class GeneratorMode { kTemplate, kLlm };

struct ExperimentConfig {
  std::vector<Method> methods{Method::kAdhoc, Method::kNeuroInvStar,
                              Method::kNeuroInv};
  int runs = 5;
  uint64_t root_seed = 0;
  int max_refinement = 5;
  int max_repair = 5;
  GeneratorMode generator = GeneratorMode::kTemplate;
  LlmConfig llm;
  ImplicationChecker checker;
  // Programs of one run processed concurrently.
  int workers = 1;
  // Transcripts and annotated outputs go here when non-empty.
  std::string artifacts_dir;
};

// Seed of one (program, run) pair; shared by all methods.
uint64_t DeriveSeed(uint64_t root, const std::string& program, int run);

// Records ordered by method, run, then corpus order. Per-program errors
// become failed records.
std::vector<RunRecord> RunExperiment(const Corpus& corpus,
                                     const ExperimentConfig& cfg);

// One method on one program.
RunRecord RunOne(const CorpusEntry& entry, Method method, int run,
                 const ExperimentConfig& cfg);

// 1 - C(n-c, k) / C(n, k). Throws Error outside 0 <= c <= n, 1 <= k <= n.
double PassAtK(int n, int c, int k);

struct CategoryMetrics {
  std::string category;
  int programs = 0;
  double avg_success_rate = 0;
  std::map<int, double> pass_at_k;

  bool operator==(const CategoryMetrics&) const = default;
};

struct MethodMetrics {
  std::string method;
  int programs = 0;
  int runs = 0;
  std::vector<double> per_run_success_rate;
  double avg_success_rate = 0;
  double std_dev_success_rate = 0;
  double avg_refinement_iters = 0;
  double avg_repair_iters = 0;
  std::map<int, double> pass_at_k;
  // Share of failed records per stage.
  double failure_refinement_share = 0;
  double failure_repair_share = 0;
  int implication1_failures = 0;
  int implication2_failures = 0;
  double implication1_share = 0;
  double implication2_share = 0;
  std::vector<CategoryMetrics> categories;

  bool operator==(const MethodMetrics&) const = default;
};

struct MetricsReport {
  std::vector<int> ks;
  std::vector<MethodMetrics> methods;

  bool operator==(const MetricsReport&) const = default;
};

// Throws Error when runs cover different program sets or k exceeds R.
MetricsReport ComputeMetrics(const std::vector<RunRecord>& records,
                             const std::vector<int>& ks);

std::string ReportJson(const MetricsReport& m);
MetricsReport ReportFromJson(const std::string& text);
// Header `method,scope,metric,value`.
std::string ReportCsv(const MetricsReport& m);
// `format` is json or csv. Throws Error on I/O failure.
void EmitReport(const MetricsReport& m, const std::string& format,
                const std::string& path);

std::string RecordsJsonl(const std::vector<RunRecord>& records,
                         bool include_timing = true);

}  // namespace invgen

#endif  // INVGEN_BENCH_H_
