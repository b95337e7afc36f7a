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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "invgen/bench.h"
#include "invgen/error.h"

namespace invgen {
namespace {

// C(n, k) when it fits in 64 bits.
std::optional<uint64_t> Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    uint64_t num = static_cast<uint64_t>(n - k + i);
    uint64_t g = std::gcd(r, static_cast<uint64_t>(i));
    uint64_t a = r / g, den = i / g;
    num /= den;  // exact: den divides num * a and gcd(a, den) == 1
    if (a > std::numeric_limits<uint64_t>::max() / num) return std::nullopt;
    r = a * num;
  }
  return r;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double SampleStdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  double m = Mean(v), ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

double PassAtK(int n, int c, int k) {
  if (n < 0 || c < 0 || c > n || k < 1 || k > n) {
    throw Error("pass@k needs 0 <= c <= n and 1 <= k <= n (got n=" +
                std::to_string(n) + ", c=" + std::to_string(c) +
                ", k=" + std::to_string(k) + ")");
  }
  if (n - c < k) return 1.0;
  auto miss = Binomial(n - c, k);
  auto all = Binomial(n, k);
  if (miss && all) {
    return static_cast<double>(*all - *miss) / static_cast<double>(*all);
  }
  // Product form for large n.
  double p = 1.0;
  for (int i = n - c + 1; i <= n; ++i) p *= 1.0 - static_cast<double>(k) / i;
  return 1.0 - p;
}

MetricsReport ComputeMetrics(const std::vector<RunRecord>& records,
                             const std::vector<int>& ks) {
  MetricsReport report;
  report.ks = ks;
  std::vector<Method> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.method) == order.end()) {
      order.push_back(r.method);
    }
  }
  std::sort(order.begin(), order.end());
  for (Method method : order) {
    // run -> program -> record
    std::map<int, std::map<std::string, const RunRecord*>> grid;
    std::map<std::string, std::string> category_of;
    for (const auto& r : records) {
      if (r.method != method) continue;
      if (!grid[r.run].emplace(r.program, &r).second) {
        throw Error("duplicate record for " + r.program + " run " +
                    std::to_string(r.run));
      }
      category_of[r.program] = r.category;
    }
    std::set<std::string> programs;
    for (const auto& [name, cat] : category_of) programs.insert(name);
    for (const auto& [run, row] : grid) {
      if (row.size() != programs.size()) {
        throw Error(std::string("ragged records for ") + MethodName(method) +
                    " run " + std::to_string(run));
      }
    }
    const int runs = static_cast<int>(grid.size());
    const int n_prog = static_cast<int>(programs.size());
    MethodMetrics mm;
    mm.method = MethodName(method);
    mm.programs = n_prog;
    mm.runs = runs;

    int refine = 0, repair = 0, failures = 0, f_ref = 0, f_rep = 0;
    std::map<std::string, int> successes;
    for (const auto& [run, row] : grid) {
      int ok = 0;
      for (const auto& [name, r] : row) {
        ok += r->success;
        successes[name] += r->success;
        refine += r->refinement_iters;
        repair += r->repair_iters;
        mm.implication1_failures += r->implication1_failures;
        mm.implication2_failures += r->implication2_failures;
        if (!r->success) {
          ++failures;
          f_ref += r->failure_stage == FailureStage::kRefinement;
          f_rep += r->failure_stage == FailureStage::kRepair;
        }
      }
      mm.per_run_success_rate.push_back(n_prog ? 100.0 * ok / n_prog : 0.0);
    }
    mm.avg_success_rate = Mean(mm.per_run_success_rate);
    mm.std_dev_success_rate = SampleStdDev(mm.per_run_success_rate);
    double cells = static_cast<double>(n_prog) * runs;
    mm.avg_refinement_iters = cells > 0 ? refine / cells : 0;
    mm.avg_repair_iters = cells > 0 ? repair / cells : 0;
    if (failures > 0) {
      mm.failure_refinement_share = static_cast<double>(f_ref) / failures;
      mm.failure_repair_share = static_cast<double>(f_rep) / failures;
    }
    int imp = mm.implication1_failures + mm.implication2_failures;
    if (imp > 0) {
      mm.implication1_share = static_cast<double>(mm.implication1_failures) / imp;
      mm.implication2_share = static_cast<double>(mm.implication2_failures) / imp;
    }
    for (int k : ks) {
      if (k < 1 || k > runs) {
        throw Error("pass@" + std::to_string(k) + " needs at least " +
                    std::to_string(k) + " runs");
      }
      double sum = 0;
      for (const auto& name : programs) sum += PassAtK(runs, successes[name], k);
      mm.pass_at_k[k] = n_prog ? sum / n_prog : 0;
    }
    for (const auto& cat : CorpusCategories()) {
      CategoryMetrics cm;
      cm.category = cat;
      std::vector<std::string> members;
      for (const auto& name : programs) {
        if (category_of[name] == cat) members.push_back(name);
      }
      if (members.empty()) continue;
      cm.programs = static_cast<int>(members.size());
      int ok = 0;
      for (const auto& name : members) ok += successes[name];
      cm.avg_success_rate = 100.0 * ok / (cm.programs * runs);
      for (int k : ks) {
        double sum = 0;
        for (const auto& name : members) sum += PassAtK(runs, successes[name], k);
        cm.pass_at_k[k] = sum / cm.programs;
      }
      mm.categories.push_back(std::move(cm));
    }
    report.methods.push_back(std::move(mm));
  }
  return report;
}

}  // namespace invgen
