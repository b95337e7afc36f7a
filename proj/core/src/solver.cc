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

#include "invgen/solver.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>

#include "invgen/error.h"
#include "invgen/logic.h"
#include "smtlib.h"
#include "subprocess.h"

namespace invgen {

CheckVerdict CheckVerdict::Valid(bool bounded) {
  CheckVerdict v;
  v.status = Status::kValid;
  v.bounded = bounded;
  return v;
}

CheckVerdict CheckVerdict::Invalid(State model) {
  CheckVerdict v;
  v.status = Status::kInvalid;
  v.model = std::move(model);
  return v;
}

CheckVerdict CheckVerdict::Unknown(std::string reason) {
  CheckVerdict v;
  v.status = Status::kUnknown;
  v.reason = std::move(reason);
  return v;
}

std::string CheckVerdict::ToString() const {
  switch (status) {
    case Status::kValid:
      return bounded ? "BoundedValid" : "Valid";
    case Status::kInvalid:
      return "Invalid " + model.ToString();
    case Status::kUnknown:
      return "Unknown(" + reason + ")";
  }
  return "?";
}

std::string ResolveSolverPath(const std::string& configured) {
  if (!configured.empty()) {
    std::string found = FindOnPath(configured);
    if (found.empty()) {
      throw SolverLaunchError("solver executable not found: " + configured);
    }
    return found;
  }
  if (const char* env = std::getenv("INVGEN_SOLVER"); env && *env) {
    std::string found = FindOnPath(env);
    if (found.empty()) {
      throw SolverLaunchError(std::string("INVGEN_SOLVER not executable: ") +
                              env);
    }
    return found;
  }
  std::string found = FindOnPath("z3");
  if (found.empty()) {
    throw SolverLaunchError(
        "no SMT solver found; pass --solver or set INVGEN_SOLVER");
  }
  return found;
}

namespace {

std::vector<std::string> SolverArgv(const std::string& path, int timeout_ms) {
  std::string base = path.substr(path.find_last_of('/') + 1);
  if (base.find("cvc") != std::string::npos) {
    return {path, "--lang=smt2", "--produce-models",
            "--tlimit-per=" + std::to_string(timeout_ms)};
  }
  if (base.find("z3") != std::string::npos) {
    return {path, "-in", "-smt2", "-t:" + std::to_string(timeout_ms)};
  }
  return {path};
}

}  // namespace

Solver::Solver(SolverConfig cfg)
    : cfg_(std::move(cfg)),
      path_(ResolveSolverPath(cfg_.path)),
      sessions_(std::clamp(cfg_.max_sessions, 1, 64)) {
  if (cfg_.timeout_ms <= 0) throw Error("solver timeout must be positive");
}

Solver::~Solver() = default;

void Solver::Log(const std::string& query, const std::string& reply) {
  if (cfg_.query_log.empty()) return;
  std::lock_guard<std::mutex> lock(log_mu_);
  std::ofstream out(cfg_.query_log, std::ios::app);
  out << "; ---- query\n" << query << "; ---- reply\n";
  size_t start = 0;
  while (start < reply.size()) {
    size_t end = reply.find('\n', start);
    if (end == std::string::npos) end = reply.size();
    out << "; " << reply.substr(start, end - start) << "\n";
    start = end + 1;
  }
}

CheckVerdict Solver::CheckImplication(const Formula& antecedent,
                                      const Formula& consequent) {
  std::string query;
  try {
    query = ToSmtLib(antecedent, consequent, cfg_);
  } catch (const TypeError&) {
    throw;
  } catch (const Error& e) {
    return CheckVerdict::Unknown("translation-unsupported");
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(query);
    if (it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
  }
  CheckVerdict v = Run(query, antecedent, consequent);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(query, v);
  return v;
}

CheckVerdict Solver::Run(const std::string& query, const Formula& antecedent,
                         const Formula& consequent) {
  ++queries_;
  std::string full = query + "(get-info :reason-unknown)\n";
  sessions_.acquire();
  ProcessResult pr;
  auto start = std::chrono::steady_clock::now();
  try {
    pr = RunProcess(SolverArgv(path_, cfg_.timeout_ms), full,
                    cfg_.timeout_ms + 2000);
  } catch (...) {
    sessions_.release();
    throw;
  }
  sessions_.release();
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  Log(full, pr.out);
  if (pr.timed_out) return CheckVerdict::Unknown("timeout");

  std::vector<SExpr> reply;
  try {
    reply = ParseSExprs(pr.out);
  } catch (const ProtocolError&) {
    throw ProtocolError("malformed solver reply: " + pr.out + pr.err);
  }
  size_t status_at = reply.size();
  for (size_t i = 0; i < reply.size(); ++i) {
    if (reply[i].is_atom && (reply[i].atom == "sat" || reply[i].atom == "unsat" ||
                             reply[i].atom == "unknown")) {
      status_at = i;
      break;
    }
  }
  if (status_at == reply.size()) {
    throw ProtocolError("solver gave no check-sat answer: " + pr.out + pr.err);
  }
  const std::string& status = reply[status_at].atom;
  if (status == "unsat") return CheckVerdict::Valid();
  if (status == "unknown") {
    std::string why = pr.out;
    if (why.find("timeout") != std::string::npos ||
        why.find("canceled") != std::string::npos ||
        elapsed >= cfg_.timeout_ms) {
      return CheckVerdict::Unknown("timeout");
    }
    return CheckVerdict::Unknown("solver-said-unknown");
  }
  if (status_at + 1 >= reply.size() || reply[status_at + 1].is_atom) {
    throw ProtocolError("sat answer without a model: " + pr.out);
  }
  std::set<std::pair<std::string, Sort>> vars = FreeVarsSorted(antecedent);
  for (const auto& v : FreeVarsSorted(consequent)) vars.insert(v);
  State model;
  try {
    model = ExtractModel(reply[status_at + 1], vars);
  } catch (const ProtocolError&) {
    return CheckVerdict::Unknown("model-replay-failed");
  } catch (const EvalError&) {
    return CheckVerdict::Unknown("model-replay-failed");
  }
  try {
    if (EvalFormula(antecedent, model) && !EvalFormula(consequent, model)) {
      return CheckVerdict::Invalid(std::move(model));
    }
  } catch (const EvalError&) {
  }
  return CheckVerdict::Unknown("model-replay-failed");
}

CheckVerdict CheckImplication(const Formula& antecedent,
                              const Formula& consequent,
                              const SolverConfig& cfg) {
  Solver solver(cfg);
  return solver.CheckImplication(antecedent, consequent);
}

}  // namespace invgen
