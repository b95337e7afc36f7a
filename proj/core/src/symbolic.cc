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

#include "invgen/symbolic.h"

#include <random>
#include <sstream>
#include <utility>

#include "invgen/interpreter.h"
#include "invgen/llm.h"
#include "invgen/logic.h"
#include "invgen/prompts.h"
#include "invgen/segment.h"
#include "invgen/wp.h"
#include "json.hpp"

namespace invgen {
namespace {

std::vector<Stmt> GhostDecls(const CandidateInvariant& c) {
  return c.ghost ? c.ghost->decls : std::vector<Stmt>{};
}

std::vector<Stmt> BodyWithSets(const Segment& loop,
                               const CandidateInvariant& c) {
  std::vector<Stmt> body = loop.body();
  if (c.ghost) {
    for (const auto& s : c.ghost->sets) body.push_back(s);
  }
  return body;
}

std::vector<Stmt> Concat(std::vector<Stmt> a, const std::vector<Stmt>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const CandidateInvariant& Lookup(const InvariantMap& invs, int k) {
  auto it = invs.find(k);
  if (it == invs.end()) {
    throw MissingInvariant(k, "no invariant supplied for loop " +
                                  std::to_string(k));
  }
  return it->second;
}

ObligationResult Discharge(int loop_id, ObligationKind kind, Formula a,
                           Formula c, const ImplicationChecker& checker) {
  ObligationResult r;
  r.loop_id = loop_id;
  r.kind = kind;
  r.antecedent = std::move(a);
  r.consequent = std::move(c);
  r.verdict = checker(r.antecedent, r.consequent);
  return r;
}

}  // namespace

const char* ObligationKindName(ObligationKind k) {
  switch (k) {
    case ObligationKind::kInitialisation: return "Initialisation";
    case ObligationKind::kPreservation: return "Preservation";
    case ObligationKind::kExit: return "Exit";
    case ObligationKind::kFinalPost: return "FinalPost";
  }
  return "?";
}

std::string VerificationResult::Table() const {
  std::ostringstream out;
  for (const auto& o : obligations) {
    out << ObligationKindName(o.kind);
    if (o.loop_id) out << " loop " << o.loop_id;
    out << ": " << o.verdict.ToString() << "\n";
  }
  return out.str();
}

std::map<int, Formula> ChainedPosts(const Program& p,
                                    const InvariantMap& invariants) {
  SegmentedProgram sp = SegmentProgram(p);
  const int loops = sp.num_loops();
  std::map<int, Formula> out;
  if (loops == 0) return out;
  out[loops] = Simplify(WpSegment(sp.LoopFree(loops + 1), p.post));
  for (int k = loops - 1; k >= 1; --k) {
    const CandidateInvariant& next = Lookup(invariants, k + 1);
    out[k] = Simplify(WpStmts(
        Concat(sp.LoopFree(k + 1).stmts, GhostDecls(next)),
        next.Conjunction()));
  }
  return out;
}

VerificationResult Verify(const Program& p, const InvariantMap& invariants,
                          const ImplicationChecker& checker) {
  SegmentedProgram sp = SegmentProgram(p);
  const int loops = sp.num_loops();
  for (int k = 1; k <= loops; ++k) Lookup(invariants, k);
  auto posts = ChainedPosts(p, invariants);

  VerificationResult r;
  auto inv = [&](int k) { return invariants.at(k).Conjunction(); };
  for (int k = 1; k <= loops; ++k) {
    Formula entry = k == 1 ? p.pre
                           : And(inv(k - 1), Not(sp.Loop(k - 1).guard()));
    Formula need = Simplify(WpStmts(
        Concat(sp.LoopFree(k).stmts, GhostDecls(invariants.at(k))), inv(k)));
    r.obligations.push_back(Discharge(k, ObligationKind::kInitialisation,
                                      entry, need, checker));
  }
  for (int k = 1; k <= loops; ++k) {
    const Segment& loop = sp.Loop(k);
    Formula wp = Simplify(WpStmts(BodyWithSets(loop, invariants.at(k)), inv(k)));
    r.obligations.push_back(Discharge(k, ObligationKind::kPreservation,
                                      And(inv(k), loop.guard()), wp, checker));
  }
  for (int k = 1; k <= loops; ++k) {
    const Segment& loop = sp.Loop(k);
    r.obligations.push_back(Discharge(k, ObligationKind::kExit,
                                      And(inv(k), Not(loop.guard())),
                                      posts.at(k), checker));
  }
  if (loops == 0) {
    r.obligations.push_back(
        Discharge(0, ObligationKind::kFinalPost, p.pre,
                  Simplify(WpStmts(p.body, p.post)), checker));
  }
  r.verified = true;
  for (size_t i = 0; i < r.obligations.size(); ++i) {
    if (!r.obligations[i].verdict.valid()) {
      r.verified = false;
      r.first_failure = i;
      break;
    }
  }
  return r;
}

TemplateRepairer::TemplateRepairer(Generator& generator, uint64_t seed)
    : generator_(generator), seed_(seed) {}

InvariantMap TemplateRepairer::Repair(const Program& p,
                                      const InvariantMap& current,
                                      const VerificationResult& failed) {
  // First failing obligation per loop.
  std::map<int, const ObligationResult*> worst;
  for (const auto& o : failed.obligations) {
    if (o.verdict.valid() || o.loop_id == 0) continue;
    worst.emplace(o.loop_id, &o);
  }
  if (worst.empty()) throw Error("no loop obligation to repair");

  auto sp = std::make_shared<const SegmentedProgram>(SegmentProgram(p));
  auto posts = ChainedPosts(p, current);
  InvariantMap next = current;
  for (const auto& [k, o] : worst) {
    const CandidateInvariant& cand = current.at(k);
    GenerationContext ctx = MakeGenerationContext(sp, k, posts.at(k), seed_);
    FailureDiagnostic diag;
    switch (o->kind) {
      case ObligationKind::kInitialisation:
        diag.obligation = Obligation::kInitialisation;
        break;
      case ObligationKind::kPreservation:
        diag.obligation = Obligation::kImplication1;
        break;
      default:
        diag.obligation = Obligation::kImplication2;
        break;
    }
    if (o->verdict.invalid()) {
      diag.model = o->verdict.model;
      diag.explanation = "counterexample " + o->verdict.model.ToString();
    }
    diag.wp_body = Simplify(
        WpStmts(BodyWithSets(sp->Loop(k), cand), cand.Conjunction()));

    auto& history = history_[k];
    ctx.failures = history;
    std::optional<CandidateInvariant> repaired;
    if (diag.obligation == Obligation::kInitialisation) {
      history.push_back({cand, diag});
      ctx.failures = history;
      for (auto& c : generator_.Generate(ctx)) {
        bool seen = false;
        for (const auto& h : history) seen = seen || SameCandidate(h.candidate, c);
        if (!seen) {
          repaired = std::move(c);
          break;
        }
      }
      if (!repaired) {
        throw RefinementStuck("no weaker candidate for loop " +
                              std::to_string(k));
      }
    } else {
      repaired = generator_.Refine(ctx, cand, diag);
      history.push_back({cand, diag});
    }
    repaired->loop_id = k;
    repaired->provenance = Provenance::kRepair;
    repaired->attempt_index = cand.attempt_index + 1;
    CheckCandidate(p, *repaired);
    next[k] = std::move(*repaired);
  }
  return next;
}

LlmRepairer::LlmRepairer(std::shared_ptr<LlmClient> client)
    : client_(std::move(client)) {}

InvariantMap LlmRepairer::Repair(const Program& p, const InvariantMap& current,
                                 const VerificationResult& failed) {
  std::string prompt = RenderPrompt(
      "repair", {{"method_name", p.name},
                 {"openjml_output", failed.Table()},
                 {"program", RenderAnnotated(p, current)}});
  InvariantMap next = current;
  for (auto& [k, c] : InvariantsFromAnnotatedReply(client_->Complete(prompt), p)) {
    c.provenance = Provenance::kRepair;
    CheckCandidate(p, c);
    next[k] = std::move(c);
  }
  return next;
}

RepairExhausted::RepairExhausted(std::shared_ptr<const SymbolicOutcome> outcome)
    : Error("could not verify within the repair limit (" +
            std::to_string(outcome->verify_calls) + " verification rounds)"),
      outcome_(std::move(outcome)) {}

SymbolicOutcome RunSymbolicNoThrow(const Program& p,
                                   const InvariantMap& invariants,
                                   Repairer& repairer,
                                   const ImplicationChecker& checker,
                                   const SymbolicConfig& cfg) {
  if (cfg.max_repair < 1) throw Error("max_repair must be >= 1");
  SymbolicOutcome out;
  out.invariants = invariants;
  for (int round = 1; round <= cfg.max_repair; ++round) {
    out.last = Verify(p, out.invariants, checker);
    ++out.verify_calls;
    if (out.last.verified) {
      out.verified = true;
      out.annotated = RenderAnnotated(p, out.invariants);
      return out;
    }
    if (round == cfg.max_repair) break;
    ++out.repairs;
    try {
      out.invariants = repairer.Repair(p, out.invariants, out.last);
    } catch (const SolverLaunchError&) {
      throw;
    } catch (const Error&) {
      // Nothing new to try; the next round re-verifies the same map.
    }
  }
  return out;
}

SymbolicOutcome RunSymbolic(const Program& p, const InvariantMap& invariants,
                            Repairer& repairer,
                            const ImplicationChecker& checker,
                            const SymbolicConfig& cfg) {
  SymbolicOutcome out =
      RunSymbolicNoThrow(p, invariants, repairer, checker, cfg);
  if (!out.verified) {
    throw RepairExhausted(std::make_shared<const SymbolicOutcome>(std::move(out)));
  }
  return out;
}

std::string RenderAnnotated(const Program& p, const InvariantMap& invariants) {
  Program aug = Augment(p, invariants);
  Annotations ann;
  for (const auto& [k, c] : invariants) ann[k] = c.conjuncts;
  return RenderProgram(aug, ann);
}

std::string SymbolicRecordJson(const Program& p, const SymbolicOutcome& o) {
  nlohmann::ordered_json doc;
  doc["program"] = p.name;
  doc["verified"] = o.verified;
  doc["verify_calls"] = o.verify_calls;
  doc["repairs"] = o.repairs;
  nlohmann::ordered_json invs = nlohmann::ordered_json::object();
  for (const auto& [k, c] : o.invariants) {
    nlohmann::ordered_json j;
    j["invariant"] = c.ToString();
    j["provenance"] = ProvenanceName(c.provenance);
    j["ghost"] = c.ghost.has_value() && !c.ghost->empty();
    invs[std::to_string(k)] = std::move(j);
  }
  doc["invariants"] = std::move(invs);
  nlohmann::ordered_json obs = nlohmann::ordered_json::array();
  for (const auto& ob : o.last.obligations) {
    nlohmann::ordered_json j;
    j["loop_id"] = ob.loop_id;
    j["kind"] = ObligationKindName(ob.kind);
    j["antecedent"] = ToString(ob.antecedent);
    j["consequent"] = ToString(ob.consequent);
    j["verdict"] = ob.verdict.ToString();
    obs.push_back(std::move(j));
  }
  doc["obligations"] = std::move(obs);
  return doc.dump(2);
}

SpotCheckResult SpotCheck(const Program& p, const InvariantMap& invariants,
                          int count, uint64_t seed, int bound) {
  SpotCheckResult res;
  Program aug = Augment(p, invariants);
  std::map<int, Formula> invs;
  for (const auto& [k, c] : invariants) invs[k] = c.Conjunction();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> val(-bound, bound);
  std::uniform_int_distribution<int64_t> len(0, bound);
  const int64_t max_tries = static_cast<int64_t>(count) * 2000;
  for (int64_t tries = 0; res.states < count && tries < max_tries; ++tries) {
    State s0;
    for (const auto& prm : p.params) {
      if (prm.sort == Sort::kArray) {
        std::vector<int64_t> elems(static_cast<size_t>(len(rng)));
        for (auto& e : elems) e = val(rng);
        s0.SetArray(prm.name, std::move(elems));
      } else {
        s0.SetInt(prm.name, val(rng));
      }
    }
    s0.nondet_seed = rng();
    bool pre = false;
    try {
      pre = EvalFormula(p.pre, s0);
    } catch (const EvalError&) {
    }
    if (!pre) continue;
    ++res.states;
    InterpretOptions opts;
    opts.fuel = 1000;
    opts.on_loop_head = [&](int loop_id, const State& s) {
      ++res.loop_heads;
      auto it = invs.find(loop_id);
      if (it == invs.end()) return;
      bool ok = false;
      try {
        ok = EvalFormula(it->second, s);
      } catch (const EvalError&) {
      }
      if (!ok) {
        res.violations.push_back("invariant of loop " +
                                 std::to_string(loop_id) + " fails at " +
                                 s.ToString() + " from " + s0.ToString());
      }
    };
    ExecResult r = Interpret(aug, s0, opts);
    if (r.status == ExecResult::Status::kError) {
      res.violations.push_back("runtime error from " + s0.ToString() + ": " +
                               r.error.message);
    } else if (r.ok()) {
      bool ok = false;
      try {
        ok = EvalFormula(p.post, r.state);
      } catch (const EvalError&) {
      }
      if (!ok) {
        res.violations.push_back("postcondition fails from " + s0.ToString());
      }
    }
  }
  return res;
}

}  // namespace invgen
