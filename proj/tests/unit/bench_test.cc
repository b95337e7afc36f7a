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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "invgen/bench.h"
#include "invgen/error.h"
#include "test_support.h"

namespace invgen {
namespace {

// Fraction of k-subsets of n runs containing at least one success.
double SubsetOracle(int n, int c, int k) {
  int hit = 0, all = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    ++all;
    // Runs 0..c-1 succeed.
    if (mask & ((1u << c) - 1)) ++hit;
  }
  return static_cast<double>(hit) / all;
}

TEST(PassAtK, Examples) {
  EXPECT_EQ(PassAtK(5, 5, 3), 1.0);
  EXPECT_EQ(PassAtK(5, 0, 3), 0.0);
  EXPECT_DOUBLE_EQ(PassAtK(5, 2, 3), 0.9);
}

TEST(PassAtK, MatchesSubsetEnumeration) {
  for (int n = 1; n <= 8; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(PassAtK(n, c, k), SubsetOracle(n, c, k), 1e-12) << n << c << k;
        if (k < n) EXPECT_LE(PassAtK(n, c, k), PassAtK(n, c, k + 1));
      }
    }
  }
}

TEST(PassAtK, DomainErrors) {
  EXPECT_THROW(PassAtK(5, 6, 1), Error);
  EXPECT_THROW(PassAtK(5, 2, 0), Error);
  EXPECT_THROW(PassAtK(5, 2, 6), Error);
  EXPECT_THROW(PassAtK(5, -1, 1), Error);
}

TEST(PassAtK, LargeArgumentsStayFinite) {
  double v = PassAtK(200, 3, 100);
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, 1.0);
}

RunRecord Rec(const std::string& prog, int run, Method m, bool ok) {
  RunRecord r;
  r.program = prog;
  r.category = "single-loop";
  r.run = run;
  r.method = m;
  r.success = ok;
  r.failure_stage = ok ? FailureStage::kNone : FailureStage::kRefinement;
  return r;
}

TEST(Metrics, AllSuccessful) {
  std::vector<RunRecord> rs;
  for (int run = 1; run <= 3; ++run) {
    for (const char* p : {"a", "b"}) rs.push_back(Rec(p, run, Method::kNeuroInv, true));
  }
  MetricsReport m = ComputeMetrics(rs, {1, 3});
  ASSERT_EQ(m.methods.size(), 1u);
  const auto& mm = m.methods[0];
  EXPECT_EQ(mm.avg_success_rate, 100.0);
  EXPECT_EQ(mm.std_dev_success_rate, 0.0);
  EXPECT_EQ(mm.pass_at_k.at(1), 1.0);
  EXPECT_EQ(mm.pass_at_k.at(3), 1.0);
}

TEST(Metrics, ReferenceShapeSynthetic) {
  std::vector<RunRecord> rs;
  for (int run = 1; run <= 5; ++run) {
    for (int p = 0; p < 100; ++p) {
      bool fail = (run == 2 && p == 0) || (run == 4 && p == 1);
      RunRecord r = Rec("p" + std::to_string(p), run, Method::kNeuroInv, !fail);
      r.refinement_iters = 1;
      r.repair_iters = p == 0 ? 5 : 0;
      rs.push_back(r);
    }
  }
  MetricsReport m = ComputeMetrics(rs, {1, 5});
  const auto& mm = m.methods[0];
  EXPECT_NEAR(mm.avg_success_rate, 99.6, 1e-9);
  EXPECT_NEAR(mm.std_dev_success_rate, std::sqrt(0.3), 1e-9);
  EXPECT_NEAR(mm.pass_at_k.at(5), 1.0, 1e-12);
  EXPECT_NEAR(mm.pass_at_k.at(1), 0.996, 1e-12);
  EXPECT_NEAR(mm.avg_refinement_iters, 1.0, 1e-12);
  EXPECT_NEAR(mm.avg_repair_iters, 25.0 / 500.0, 1e-12);
  EXPECT_EQ(mm.per_run_success_rate,
            (std::vector<double>{100, 99, 100, 99, 100}));
  EXPECT_EQ(mm.failure_refinement_share, 1.0);
}

TEST(Metrics, AlwaysFailingProgramContributesZero) {
  std::vector<RunRecord> rs;
  for (int run = 1; run <= 5; ++run) {
    rs.push_back(Rec("good", run, Method::kAdhoc, true));
    rs.push_back(Rec("bad", run, Method::kAdhoc, false));
  }
  MetricsReport m = ComputeMetrics(rs, {5});
  EXPECT_NEAR(m.methods[0].pass_at_k.at(5), 0.5, 1e-12);
}

TEST(Metrics, PermutationInvariant) {
  std::vector<RunRecord> rs;
  std::mt19937_64 rng(4);
  for (int run = 1; run <= 4; ++run) {
    for (int p = 0; p < 6; ++p) {
      for (Method m : {Method::kAdhoc, Method::kNeuroInv}) {
        RunRecord r = Rec("p" + std::to_string(p), run, m, rng() % 3 != 0);
        r.category = p < 3 ? "single-loop" : "noisy";
        r.refinement_iters = static_cast<int>(rng() % 4);
        r.implication1_failures = static_cast<int>(rng() % 3);
        r.implication2_failures = static_cast<int>(rng() % 2);
        rs.push_back(r);
      }
    }
  }
  MetricsReport a = ComputeMetrics(rs, {1, 3});
  std::shuffle(rs.begin(), rs.end(), rng);
  MetricsReport b = ComputeMetrics(rs, {1, 3});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.methods[0].categories.size(), 2u);
}

TEST(Metrics, RaggedRecordsRejected) {
  std::vector<RunRecord> rs{Rec("a", 1, Method::kAdhoc, true), Rec("b", 1, Method::kAdhoc, true),
                            Rec("a", 2, Method::kAdhoc, true)};
  EXPECT_THROW(ComputeMetrics(rs, {1}), Error);
  std::vector<RunRecord> ok{Rec("a", 1, Method::kAdhoc, true)};
  EXPECT_THROW(ComputeMetrics(ok, {2}), Error);
}

MetricsReport SampleReport() {
  std::vector<RunRecord> rs;
  for (int run = 1; run <= 3; ++run) {
    for (int p = 0; p < 4; ++p) {
      RunRecord r = Rec("p" + std::to_string(p), run, Method::kNeuroInvStar, (p + run) % 3 != 0);
      r.implication1_failures = p;
      r.implication2_failures = 1;
      if (!r.success) r.failure_stage = p % 2 ? FailureStage::kRepair : FailureStage::kRefinement;
      rs.push_back(r);
    }
  }
  return ComputeMetrics(rs, {1, 3});
}

TEST(Report, JsonRoundTrip) {
  MetricsReport m = SampleReport();
  std::string text = ReportJson(m);
  EXPECT_EQ(ReportFromJson(text), m);
  EXPECT_EQ(text, ReportJson(ReportFromJson(text)));
}

TEST(Report, CsvSchema) {
  std::string csv = ReportCsv(SampleReport());
  EXPECT_EQ(csv.rfind("method,scope,metric,value\n", 0), 0u);
  EXPECT_NE(csv.find(",refinement_failure_split,implication1="), std::string::npos);
  EXPECT_NE(csv.find("neuroinv-star,all,avg_success_rate,"), std::string::npos);
}

TEST(Report, EmissionIsByteStable) {
  auto dir = std::filesystem::temp_directory_path() / "invgen_report_test";
  std::filesystem::create_directories(dir);
  MetricsReport m = SampleReport();
  for (const char* fmt : {"json", "csv"}) {
    std::string a = (dir / (std::string("a.") + fmt)).string();
    std::string b = (dir / (std::string("b.") + fmt)).string();
    EmitReport(m, fmt, a);
    EmitReport(m, fmt, b);
    EXPECT_EQ(testing::ReadFile(a), testing::ReadFile(b));
  }
  EXPECT_THROW(EmitReport(m, "xml", (dir / "c").string()), Error);
  std::filesystem::remove_all(dir);
}

TEST(Corpus, LoadsBundledCorpus) {
  Corpus c = LoadCorpus(testing::CorpusDir());
  ASSERT_EQ(c.entries.size(), 20u);
  std::set<std::string> cats;
  int hard = 0;
  for (const auto& e : c.entries) {
    cats.insert(e.category);
    hard += e.hard;
    EXPECT_TRUE(e.expected_verifiable);
  }
  EXPECT_EQ(cats.size(), CorpusCategories().size());
  EXPECT_EQ(hard, 3);
}

TEST(Corpus, RejectsUnknownCategory) {
  auto dir = std::filesystem::temp_directory_path() / "invgen_bad_corpus";
  std::filesystem::create_directories(dir / "weird");
  std::ofstream(dir / "weird" / "x.imp") << "method x(int n)\n{\n}\n";
  std::ofstream(dir / "manifest") << "weird/x.imp verifiable\n";
  EXPECT_THROW(LoadCorpus(dir.string()), Error);
  std::filesystem::remove_all(dir);
}

TEST(Methods, Names) {
  for (Method m : {Method::kAdhoc, Method::kNeuroInvStar, Method::kNeuroInv}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_THROW(ParseMethod("specgen"), Error);
  EXPECT_EQ(DeriveSeed(1, "a/b", 2), DeriveSeed(1, "a/b", 2));
  EXPECT_NE(DeriveSeed(1, "a/b", 2), DeriveSeed(1, "a/b", 3));
}

TEST(Experiment, DeterministicAndWellFormed) {
  Corpus full = LoadCorpus(testing::CorpusDir());
  Corpus small;
  small.root = full.root;
  for (const auto& e : full.entries) {
    if (e.id == "single-loop/sum" || e.id == "single-loop/approach" ||
        e.id == "array-forall/fill") {
      small.entries.push_back(e);
    }
  }
  ExperimentConfig cfg;
  cfg.runs = 2;
  cfg.root_seed = 9;
  if (auto s = testing::MaybeSolver()) {
    cfg.checker = SolverChecker(s);
  } else {
    cfg.checker = BoundedChecker(3);
  }
  auto a = RunExperiment(small, cfg);
  auto b = RunExperiment(small, cfg);
  ASSERT_EQ(a.size(), 3u * 2u * 3u);
  EXPECT_EQ(RecordsJsonl(a, false), RecordsJsonl(b, false));
  for (const auto& r : a) {
    if (r.method == Method::kNeuroInvStar || r.method == Method::kAdhoc) {
      EXPECT_EQ(r.repair_iters, 0);
    }
    if (r.method == Method::kAdhoc) EXPECT_EQ(r.refinement_iters, 0);
    EXPECT_EQ(r.success, r.failure_stage == FailureStage::kNone);
  }
  auto find = [&](Method m, const std::string& id) {
    return *std::find_if(a.begin(), a.end(), [&](const RunRecord& r) {
      return r.method == m && r.program == id && r.run == 1;
    });
  };
  EXPECT_FALSE(find(Method::kNeuroInvStar, "single-loop/approach").success);
  EXPECT_TRUE(find(Method::kNeuroInv, "single-loop/approach").success);
}

}  // namespace
}  // namespace invgen
