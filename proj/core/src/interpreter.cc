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

#include "invgen/interpreter.h"

#include <memory>
#include <utility>

#include "invgen/logic.h"

namespace invgen {
namespace {

struct Diverged {};

struct Failure {
  RuntimeError error;
};

class Machine {
 public:
  Machine(State state, const InterpretOptions& options)
      : state_(std::move(state)), options_(options), fuel_(options.fuel) {
    for (auto& [name, value] : state_.vars) {
      if (auto* arr = std::get_if<ArrayValue>(&value)) arr->outside.clear();
    }
    if (options.nondet) {
      nondet_ = options.nondet;
    } else {
      owned_ = std::make_unique<SeededNondet>(state_.nondet_seed);
      nondet_ = owned_.get();
    }
  }

  ExecResult Run(const std::vector<Stmt>& stmts) {
    ExecResult result;
    try {
      Exec(stmts);
      result.status = ExecResult::Status::kOk;
    } catch (const Diverged&) {
      result.status = ExecResult::Status::kDiverged;
    } catch (const Failure& f) {
      result.status = ExecResult::Status::kError;
      result.error = f.error;
    }
    result.state = std::move(state_);
    return result;
  }

 private:
  [[noreturn]] void Fail(const EvalError& e, SourceLoc loc) {
    throw Failure{RuntimeError{e.kind(), e.what(), loc}};
  }

  int64_t Int(const Expr& e, SourceLoc loc) {
    try {
      return EvalInt(e, state_);
    } catch (const EvalError& err) {
      Fail(err, loc);
    }
  }

  bool Guard(const Expr& g, SourceLoc loc) {
    if (g->kind() == Kind::kNondet) return nondet_->Next();
    try {
      return EvalFormula(g, state_);
    } catch (const EvalError& err) {
      Fail(err, loc);
    }
  }

  void Exec(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) Exec(s);
  }

  void Exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kSkip:
        return;
      case Stmt::Kind::kAssign:
      case Stmt::Kind::kGhostDecl:
      case Stmt::Kind::kGhostSet:
        state_.SetInt(s.target, Int(s.value, s.loc));
        return;
      case Stmt::Kind::kStore: {
        int64_t idx = Int(s.index, s.loc);
        int64_t v = Int(s.value, s.loc);
        auto it = state_.vars.find(s.target);
        ArrayValue* arr =
            it == state_.vars.end() ? nullptr : std::get_if<ArrayValue>(&it->second);
        if (!arr) {
          Fail(EvalError(EvalError::Kind::kUnbound,
                         "unbound array " + s.target),
               s.loc);
        }
        if (idx < 0 || idx >= arr->length()) {
          Fail(EvalError(EvalError::Kind::kOutOfBounds,
                         "index " + std::to_string(idx) +
                             " out of bounds for " + s.target + " of length " +
                             std::to_string(arr->length())),
               s.loc);
        }
        arr->elems[static_cast<size_t>(idx)] = v;
        return;
      }
      case Stmt::Kind::kIf:
        if (Guard(s.guard, s.loc)) {
          Exec(s.then_body);
        } else {
          Exec(s.else_body);
        }
        return;
      case Stmt::Kind::kWhile:
        while (true) {
          if (options_.on_loop_head) options_.on_loop_head(s.loop_id, state_);
          if (!Guard(s.guard, s.loc)) return;
          if (fuel_ <= 0) throw Diverged{};
          --fuel_;
          Exec(s.then_body);
        }
    }
  }

  State state_;
  const InterpretOptions& options_;
  int64_t fuel_;
  std::unique_ptr<NondetSource> owned_;
  NondetSource* nondet_ = nullptr;
};

}  // namespace

ExecResult ExecStmts(const std::vector<Stmt>& stmts, const State& s0,
                     const InterpretOptions& options) {
  return Machine(s0, options).Run(stmts);
}

ExecResult Interpret(const Program& p, const State& s0,
                     const InterpretOptions& options) {
  for (const auto& param : p.params) {
    bool ok = s0.Has(param.name) &&
              (param.sort == Sort::kArray
                   ? std::holds_alternative<ArrayValue>(s0.vars.at(param.name))
                   : std::holds_alternative<int64_t>(s0.vars.at(param.name)));
    if (!ok) {
      ExecResult r;
      r.status = ExecResult::Status::kError;
      r.error = RuntimeError{EvalError::Kind::kUnbound,
                             "parameter " + param.name + " is not bound",
                             SourceLoc{}};
      r.state = s0;
      return r;
    }
  }
  return ExecStmts(p.body, s0, options);
}

ExecResult Interpret(const Program& p, const State& s0, int64_t fuel) {
  InterpretOptions options;
  options.fuel = fuel;
  return Interpret(p, s0, options);
}

}  // namespace invgen
