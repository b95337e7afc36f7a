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

// Big-step reference interpreter for MiniImp.

#ifndef INVGEN_INTERPRETER_H_
#define INVGEN_INTERPRETER_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "invgen/error.h"
#include "invgen/program.h"
#include "invgen/state.h"

namespace invgen {

// Resolves nondet() guards.
class NondetSource {
 public:
  virtual ~NondetSource() = default;
  virtual bool Next() = 0;
};

class SeededNondet : public NondetSource {
 public:
  explicit SeededNondet(uint64_t seed) : rng_(seed) {}
  bool Next() override { return (rng_() & 1u) != 0; }

 private:
  std::mt19937_64 rng_;
};

// Replays a fixed sequence, then answers `fallback`.
class ScriptedNondet : public NondetSource {
 public:
  explicit ScriptedNondet(std::vector<bool> script, bool fallback = false)
      : script_(std::move(script)), fallback_(fallback) {}
  bool Next() override {
    return pos_ < script_.size() ? script_[pos_++] : fallback_;
  }
  size_t consumed() const { return pos_; }

 private:
  std::vector<bool> script_;
  size_t pos_ = 0;
  bool fallback_;
};

struct RuntimeError {
  EvalError::Kind kind = EvalError::Kind::kUnsupported;
  std::string message;
  SourceLoc loc;
};

struct ExecResult {
  enum class Status { kOk, kDiverged, kError };
  Status status = Status::kOk;
  State state;
  RuntimeError error;

  bool ok() const { return status == Status::kOk; }
};

// Invoked each time a loop guard is about to be evaluated.
using LoopHeadObserver = std::function<void(int loop_id, const State&)>;

struct InterpretOptions {
  int64_t fuel = 1000;
  LoopHeadObserver on_loop_head;
  // When null, a SeededNondet over the state's nondet_seed is used.
  NondetSource* nondet = nullptr;
};

ExecResult Interpret(const Program& p, const State& s0, int64_t fuel);
ExecResult Interpret(const Program& p, const State& s0,
                     const InterpretOptions& options);
// Runs a statement list directly (no parameter check).
ExecResult ExecStmts(const std::vector<Stmt>& stmts, const State& s0,
                     const InterpretOptions& options);

}  // namespace invgen

#endif  // INVGEN_INTERPRETER_H_
