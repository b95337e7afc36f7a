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

// Example-driven conjunctive invariant learner behind TemplateGenerator.
//
// Examples come in three flavours: positive loop-head states (sampled runs,
// initialisation counterexamples), implication states (guard true: the
// invariant there must imply its own WP over the body) and negative states
// (guard false, loop postcondition false). The learner keeps the atoms true
// on every positive, prunes them Houdini-style against the implication
// states, and then searches subsets by size and index order.

#ifndef INVGEN_SRC_LEARNER_H_
#define INVGEN_SRC_LEARNER_H_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "invgen/generate.h"

namespace invgen::internal {

struct GhostPlan {
  std::string name;
  // Initialiser and per-iteration update.
  Expr value;
};

struct Atom {
  Formula formula;
  std::string text;
  int tier = 0;
  // Indices into the learner's ghost plans.
  std::vector<int> ghosts;
  Formula wp;
};

class Learner {
 public:
  explicit Learner(const GenerationContext& ctx);

  const std::vector<Atom>& atoms() const { return atoms_; }

  // Consistent conjunctions, weakest-looking first. `blocked` holds sorted
  // atom-text sets that must not be returned. With `core_first` the whole
  // Houdini survivor set leads the list.
  std::vector<CandidateInvariant> Learn(
      const std::vector<std::vector<std::string>>& blocked,
      int max_candidates, int64_t max_checks, bool core_first = false);

 private:
  using Bits = std::vector<uint64_t>;

  void Analyse();
  void BuildAtoms();
  void AddAtom(Formula f, int tier);
  void Sample();
  void AddFailureExamples();
  void Classify(const State& s, bool positive);
  bool Holds(const Formula& f, const State& s) const;
  State Complete(const State& s);
  State RandomState(bool wide);
  CandidateInvariant MakeCandidate(const std::vector<int>& chosen) const;

  const GenerationContext& ctx_;
  const SegmentedProgram& sp_;
  int loop_id_ = 0;
  Stmt loop_;
  std::vector<Stmt> body_;  // with ghost updates
  std::vector<Stmt> pre_segment_;
  Formula guard_;
  Formula post_;
  std::map<std::string, Sort> scope_;
  std::set<std::string> modified_;
  std::vector<std::string> counters_;
  std::map<std::string, Expr> init_values_;
  std::set<int64_t> constants_;
  std::string bound_var_;
  std::vector<GhostPlan> ghosts_;
  Program augmented_;

  std::vector<Atom> atoms_;
  std::set<std::string> atom_texts_;

  std::mt19937_64 rng_;
  std::vector<State> positives_;
  std::vector<State> samples_;
  std::set<std::string> seen_;

  // Evaluation results, one bit per example.
  std::vector<Bits> imp_val_, imp_wp_, neg_val_;
  std::vector<bool> alive_;
  size_t n_imp_ = 0, n_neg_ = 0;
};

}  // namespace invgen::internal

#endif  // INVGEN_SRC_LEARNER_H_
