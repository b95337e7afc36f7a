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

// Validity checking of implications with an external SMT-LIB solver, plus a
// brute-force bounded checker that shares the verdict type.

#ifndef INVGEN_SOLVER_H_
#define INVGEN_SOLVER_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>

#include "invgen/expr.h"
#include "invgen/state.h"

namespace invgen {

struct CheckVerdict {
  enum class Status { kValid, kInvalid, kUnknown };

  Status status = Status::kUnknown;
  // Invalid only: values for every free variable of the implication.
  State model;
  // Unknown only: "timeout", "solver-said-unknown",
  // "translation-unsupported" or "model-replay-failed".
  std::string reason;
  // Valid only: established by bounded enumeration, not by proof.
  bool bounded = false;

  static CheckVerdict Valid(bool bounded = false);
  static CheckVerdict Invalid(State model);
  static CheckVerdict Unknown(std::string reason);

  bool valid() const { return status == Status::kValid; }
  bool invalid() const { return status == Status::kInvalid; }
  bool unknown() const { return status == Status::kUnknown; }
  // "Valid", "BoundedValid", "Invalid {x: 1}", "Unknown(timeout)".
  std::string ToString() const;
};

struct SolverConfig {
  // Empty: $INVGEN_SOLVER, then `z3` on PATH.
  std::string path;
  int timeout_ms = 10000;
  // Emitted as (set-logic ...) when non-empty.
  std::string logic;
  uint64_t seed = 0;
  // Upper bound on concurrently running solver processes.
  int max_sessions = 4;
  // Append every query and reply here when non-empty.
  std::string query_log;
};

// Resolves the executable: explicit path, $INVGEN_SOLVER, then `z3` on PATH.
// Throws SolverLaunchError when nothing usable is found.
std::string ResolveSolverPath(const std::string& configured);

// Query text checking validity of `antecedent ==> consequent`. Deterministic.
// Throws TypeError (inconsistent sorts) or an Error whose message begins with
// "translation-unsupported" for forms outside the fragment.
std::string ToSmtLib(const Formula& antecedent, const Formula& consequent,
                     const SolverConfig& cfg = {});

class Solver {
 public:
  explicit Solver(SolverConfig cfg);
  ~Solver();

  // Thread-safe. Throws SolverLaunchError or ProtocolError.
  CheckVerdict CheckImplication(const Formula& antecedent,
                                const Formula& consequent);

  const SolverConfig& config() const { return cfg_; }
  int64_t queries() const { return queries_.load(); }
  int64_t cache_hits() const { return cache_hits_.load(); }

 private:
  CheckVerdict Run(const std::string& query, const Formula& antecedent,
                   const Formula& consequent);
  void Log(const std::string& query, const std::string& reply);

  SolverConfig cfg_;
  std::string path_;
  std::counting_semaphore<64> sessions_;
  std::mutex mu_;
  std::map<std::string, CheckVerdict> cache_;
  std::mutex log_mu_;
  std::atomic<int64_t> queries_{0};
  std::atomic<int64_t> cache_hits_{0};
};

// One-shot convenience wrapper around Solver.
CheckVerdict CheckImplication(const Formula& antecedent,
                              const Formula& consequent,
                              const SolverConfig& cfg);

// Exhaustive search: scalars in [-bound, bound], array lengths in
// [0, bound], elements in [-bound, bound]. Enumeration is ascending with the
// alphabetically first variable most significant. States on which the
// implication cannot be evaluated are skipped. Throws Error when the space
// exceeds 10^7 states.
CheckVerdict BoundedCheck(const Formula& antecedent, const Formula& consequent,
                          int bound);

// Decides `antecedent ==> consequent`; the seam used by the pipeline stages.
using ImplicationChecker =
    std::function<CheckVerdict(const Formula&, const Formula&)>;

ImplicationChecker SolverChecker(std::shared_ptr<Solver> solver);
ImplicationChecker BoundedChecker(int bound);

}  // namespace invgen

#endif  // INVGEN_SOLVER_H_
