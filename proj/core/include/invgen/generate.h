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

// Candidate loop invariants and the generators that propose them.

#ifndef INVGEN_GENERATE_H_
#define INVGEN_GENERATE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invgen/expr.h"
#include "invgen/program.h"
#include "invgen/segment.h"
#include "invgen/state.h"

namespace invgen {

enum class Provenance { kTemplate, kLlm, kRepair };
const char* ProvenanceName(Provenance p);

// Ghost code that accompanies an invariant phrased over ghost variables.
struct GhostAugmentation {
  // Inserted immediately before the loop.
  std::vector<Stmt> decls;
  // Appended to the end of the loop body.
  std::vector<Stmt> sets;

  bool empty() const { return decls.empty() && sets.empty(); }
};

struct CandidateInvariant {
  int loop_id = 0;
  std::vector<Formula> conjuncts;
  std::optional<GhostAugmentation> ghost;
  Provenance provenance = Provenance::kTemplate;
  int attempt_index = 0;

  Formula Conjunction() const;
  // Conjuncts joined by ` && `.
  std::string ToString() const;
};

// Syntactic equality of the simplified conjunctions and of the ghost code.
bool SameCandidate(const CandidateInvariant& a, const CandidateInvariant& b);

// Throws TypeError unless `c` is non-empty, boolean, mentions only names in
// scope at its loop, and its ghost names are fresh for `p`.
void CheckCandidate(const Program& p, const CandidateInvariant& c);

// Inserts every candidate's ghost code into `p`.
Program Augment(const Program& p,
                const std::map<int, CandidateInvariant>& invariants);

// Names that may appear in an invariant of `loop_id`: parameters, and locals
// and ghosts declared before the loop.
std::map<std::string, Sort> ScopeAtLoop(const Program& p, int loop_id);

enum class Obligation { kImplication1, kImplication2, kInitialisation };
const char* ObligationName(Obligation o);

struct FailureDiagnostic {
  Obligation obligation = Obligation::kImplication1;
  std::string explanation;
  // Implication1/2: a loop-head state. Initialisation: a state on entry to
  // the loop-free segment preceding the loop.
  std::optional<State> model;
  // WP(body, I) when the failure was found.
  Formula wp_body;
};

struct FailedAttempt {
  CandidateInvariant candidate;
  FailureDiagnostic diagnostic;
};

struct GenerationContext {
  std::shared_ptr<const SegmentedProgram> program;
  std::string marker_view;
  int loop_index = 0;
  Expr guard;
  Formula loop_post;
  Formula pre;
  std::vector<FailedAttempt> failures;
  uint64_t seed = 0;
};

// Fills the derived fields from the segmented program. Throws Error when the
// loop index is out of range.
GenerationContext MakeGenerationContext(
    std::shared_ptr<const SegmentedProgram> program, int loop_index,
    Formula loop_post, uint64_t seed = 0);

class Generator {
 public:
  virtual ~Generator() = default;

  // Ranked, non-empty. Throws GeneratorExhausted, TransportError or
  // MalformedReply.
  virtual std::vector<CandidateInvariant> Generate(
      const GenerationContext& ctx) = 0;

  // A candidate distinct from `failed`. Throws RefinementStuck.
  virtual CandidateInvariant Refine(const GenerationContext& ctx,
                                    const CandidateInvariant& failed,
                                    const FailureDiagnostic& diag) = 0;

  virtual std::string name() const = 0;
};

struct TemplateOptions {
  // Candidates returned by Generate.
  int max_candidates = 8;
  // Budget of conjunctions examined by the subset search.
  int64_t max_subset_checks = 3000000;
};

// Deterministic offline enumerator over a fixed atom grammar, driven by
// sampled executions and counterexample models.
class TemplateGenerator : public Generator {
 public:
  explicit TemplateGenerator(TemplateOptions options = {});

  std::vector<CandidateInvariant> Generate(
      const GenerationContext& ctx) override;
  CandidateInvariant Refine(const GenerationContext& ctx,
                            const CandidateInvariant& failed,
                            const FailureDiagnostic& diag) override;
  std::string name() const override { return "template"; }

  // The atom grammar for the context, in ranking order.
  std::vector<std::string> Atoms(const GenerationContext& ctx) const;

 private:
  TemplateOptions options_;
};

}  // namespace invgen

#endif  // INVGEN_GENERATE_H_
