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

// Whole-program verification of supplied invariants and bounded repair.

#ifndef INVGEN_SYMBOLIC_H_
#define INVGEN_SYMBOLIC_H_

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

using InvariantMap = std::map<int, CandidateInvariant>;

enum class ObligationKind { kInitialisation, kPreservation, kExit, kFinalPost };
const char* ObligationKindName(ObligationKind k);

struct ObligationResult {
  // 0 for FinalPost.
  int loop_id = 0;
  ObligationKind kind = ObligationKind::kInitialisation;
  Formula antecedent;
  Formula consequent;
  CheckVerdict verdict;
};

struct VerificationResult {
  bool verified = false;
  std::vector<ObligationResult> obligations;
  std::optional<size_t> first_failure;

  // One line per obligation, e.g. `Preservation loop 1: Invalid {i: 3}`.
  std::string Table() const;
};

// Obligations in order: Initialisation per loop, Preservation per loop, Exit
// per loop, then FinalPost for a method without loops. Throws
// MissingInvariant.
VerificationResult Verify(const Program& p, const InvariantMap& invariants,
                          const ImplicationChecker& checker);

// The condition each loop's exit must establish, chained backwards from
// Post through the later segments and invariants. Indexed by loop_id.
std::map<int, Formula> ChainedPosts(const Program& p,
                                    const InvariantMap& invariants);

class Repairer {
 public:
  virtual ~Repairer() = default;
  // New invariants for every loop. Throws Error when nothing new is found.
  virtual InvariantMap Repair(const Program& p, const InvariantMap& current,
                              const VerificationResult& failed) = 0;
  virtual std::string name() const = 0;
};

// Initialisation failures relearn from the counterexample run (weakening);
// Preservation and Exit failures go through Generator::Refine.
class TemplateRepairer : public Repairer {
 public:
  explicit TemplateRepairer(Generator& generator, uint64_t seed = 0);
  InvariantMap Repair(const Program& p, const InvariantMap& current,
                      const VerificationResult& failed) override;
  std::string name() const override { return "template"; }

 private:
  Generator& generator_;
  uint64_t seed_;
  std::map<int, std::vector<FailedAttempt>> history_;
};

class LlmClient;

// Sends the repair prompt with the obligation table as verifier output.
class LlmRepairer : public Repairer {
 public:
  explicit LlmRepairer(std::shared_ptr<LlmClient> client);
  InvariantMap Repair(const Program& p, const InvariantMap& current,
                      const VerificationResult& failed) override;
  std::string name() const override { return "llm"; }

 private:
  std::shared_ptr<LlmClient> client_;
};

struct SymbolicConfig {
  int max_repair = 5;
};

struct SymbolicOutcome {
  bool verified = false;
  InvariantMap invariants;
  int repairs = 0;
  int verify_calls = 0;
  VerificationResult last;
  // Annotated source, verified runs only.
  std::string annotated;
};

class RepairExhausted : public Error {
 public:
  explicit RepairExhausted(std::shared_ptr<const SymbolicOutcome> outcome);
  const VerificationResult& last() const { return outcome_->last; }
  const SymbolicOutcome& outcome() const { return *outcome_; }

 private:
  std::shared_ptr<const SymbolicOutcome> outcome_;
};

// Verify, repair on failure, repeat. At most max_repair repairs. Throws
// RepairExhausted.
SymbolicOutcome RunSymbolic(const Program& p, const InvariantMap& invariants,
                            Repairer& repairer,
                            const ImplicationChecker& checker,
                            const SymbolicConfig& cfg = {});

// Failure reported in the outcome instead of thrown.
SymbolicOutcome RunSymbolicNoThrow(const Program& p,
                                   const InvariantMap& invariants,
                                   Repairer& repairer,
                                   const ImplicationChecker& checker,
                                   const SymbolicConfig& cfg = {});

// Annotated source with ghost code spliced in.
std::string RenderAnnotated(const Program& p, const InvariantMap& invariants);

// Machine-readable record of a symbolic run.
std::string SymbolicRecordJson(const Program& p, const SymbolicOutcome& o);

struct SpotCheckResult {
  int states = 0;
  int loop_heads = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Runs `count` random initial states satisfying Pre (scalars and elements
// in [-bound, bound], array lengths up to bound) and checks every invariant
// at each loop head and Post at exit. Runtime errors count as violations.
SpotCheckResult SpotCheck(const Program& p, const InvariantMap& invariants,
                          int count = 100, uint64_t seed = 0, int bound = 4);

}  // namespace invgen

#endif  // INVGEN_SYMBOLIC_H_
