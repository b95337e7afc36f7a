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

// Backward-chaining invariant inference with per-loop refinement.

#ifndef INVGEN_NEURAL_H_
#define INVGEN_NEURAL_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/program.h"
#include "invgen/solver.h"

namespace invgen {

struct NeuralConfig {
  int max_refinement = 5;
  // With an LlmGenerator, also ask the model for implication verdicts. They
  // are logged; the checker's verdicts drive control flow.
  bool llm_implication_checks = false;
  uint64_t seed = 0;
};

struct TranscriptEvent {
  enum class Type {
    kSegmentWp,     // WP of a loop-free segment
    kLoopStart,     // loop_post fixed for this loop
    kCandidate,     // candidate proposed (generate or refine)
    kMalformed,     // generator reply could not be used
    kCheck,         // one implication check
    kLlmVerdict,    // model's own answer to an implication prompt
    kValidated,     // loop accepted
    kExhausted,     // loop ran out of attempts
    kPrecondition,  // final Pre ==> currentPost check
  };
  Type type = Type::kCheck;
  int loop_id = 0;
  int segment_index = 0;
  int attempt = 0;
  // Implication1, Implication2 or PreconditionEntailment.
  std::string obligation;
  std::string source;  // generate or refine
  std::string candidate;
  std::string antecedent;
  std::string consequent;
  std::string formula;
  std::string verdict;
  std::string note;
};

const char* TranscriptEventName(TranscriptEvent::Type t);

struct Transcript {
  std::string program;
  std::vector<TranscriptEvent> events;

  // Stable JSON rendering.
  std::string ToJson(int indent = 2) const;
};

struct NeuralOutcome {
  bool success = false;
  std::map<int, CandidateInvariant> invariants;
  // Refine calls across all loops.
  int refinement_count = 0;
  int implication1_failures = 0;
  int implication2_failures = 0;
  std::optional<CheckVerdict> precondition_entailment;
  Transcript transcript;
  // Failure only.
  int failed_loop = 0;
  int failed_attempts = 0;
};

class RefinementExhausted : public Error {
 public:
  RefinementExhausted(int loop_id, int attempts,
                      std::shared_ptr<const NeuralOutcome> partial);
  int loop_id() const { return loop_id_; }
  int attempts() const { return attempts_; }
  // Transcript and counters up to the failure.
  const NeuralOutcome& partial() const { return *partial_; }

 private:
  int loop_id_;
  int attempts_;
  std::shared_ptr<const NeuralOutcome> partial_;
};

// Throws RefinementExhausted, NestedLoopError, SolverLaunchError.
NeuralOutcome RunNeural(const Program& p, Generator& generator,
                        const ImplicationChecker& checker,
                        const NeuralConfig& cfg = {});

// Same schedule, but failure is reported in the outcome instead of thrown.
NeuralOutcome RunNeuralNoThrow(const Program& p, Generator& generator,
                               const ImplicationChecker& checker,
                               const NeuralConfig& cfg = {});

}  // namespace invgen

#endif  // INVGEN_NEURAL_H_
