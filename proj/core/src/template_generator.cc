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

#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/logic.h"
#include "learner.h"

namespace invgen {
namespace {

std::vector<std::string> TextsOf(const CandidateInvariant& c) {
  std::vector<std::string> t;
  for (const auto& f : c.conjuncts) t.push_back(ToString(Simplify(f)));
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<std::vector<std::string>> Blocked(const GenerationContext& ctx) {
  std::vector<std::vector<std::string>> out;
  for (const auto& f : ctx.failures) out.push_back(TextsOf(f.candidate));
  return out;
}

}  // namespace

TemplateGenerator::TemplateGenerator(TemplateOptions options)
    : options_(options) {}

std::vector<std::string> TemplateGenerator::Atoms(
    const GenerationContext& ctx) const {
  internal::Learner learner(ctx);
  std::vector<std::string> out;
  for (const auto& a : learner.atoms()) out.push_back(a.text);
  return out;
}

std::vector<CandidateInvariant> TemplateGenerator::Generate(
    const GenerationContext& ctx) {
  internal::Learner learner(ctx);
  auto out = learner.Learn(Blocked(ctx), options_.max_candidates,
                           options_.max_subset_checks);
  if (out.empty()) {
    throw GeneratorExhausted("no template candidate for loop " +
                             std::to_string(ctx.loop_index));
  }
  return out;
}

CandidateInvariant TemplateGenerator::Refine(const GenerationContext& ctx,
                                             const CandidateInvariant& failed,
                                             const FailureDiagnostic& diag) {
  GenerationContext extended = ctx;
  bool recorded = std::any_of(
      ctx.failures.begin(), ctx.failures.end(), [&](const FailedAttempt& f) {
        return SameCandidate(f.candidate, failed) &&
               f.diagnostic.obligation == diag.obligation;
      });
  if (!recorded) extended.failures.push_back({failed, diag});
  auto blocked = Blocked(extended);
  blocked.push_back(TextsOf(failed));
  // Repeated preservation failures: fall back on the strongest survivor set.
  auto imp1 = std::count_if(
      extended.failures.begin(), extended.failures.end(),
      [](const FailedAttempt& f) {
        return f.diagnostic.obligation == Obligation::kImplication1;
      });
  internal::Learner learner(extended);
  auto out = learner.Learn(blocked, options_.max_candidates,
                           options_.max_subset_checks, imp1 >= 2);
  for (auto& c : out) {
    if (SameCandidate(c, failed)) continue;
    c.attempt_index = failed.attempt_index + 1;
    return c;
  }
  throw RefinementStuck("no refinement of " + failed.ToString() +
                        " for loop " + std::to_string(ctx.loop_index));
}

}  // namespace invgen
