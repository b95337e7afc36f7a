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

#include "invgen/neural.h"

#include <utility>

#include "invgen/llm.h"
#include "invgen/logic.h"
#include "invgen/segment.h"
#include "invgen/wp.h"
#include "json.hpp"

namespace invgen {
namespace {

using Event = TranscriptEvent;

Event MakeEvent(Event::Type type, int loop_id, int attempt) {
  Event e;
  e.type = type;
  e.loop_id = loop_id;
  e.attempt = attempt;
  return e;
}

Event MakeSegmentEvent(int segment_index) {
  Event e;
  e.type = Event::Type::kSegmentWp;
  e.segment_index = segment_index;
  return e;
}

std::string Explain(const CheckVerdict& v) {
  if (v.invalid()) return "counterexample " + v.model.ToString();
  return "";
}

FailureDiagnostic Diagnose(Obligation o, const CheckVerdict& v,
                           const Formula& wp) {
  FailureDiagnostic d;
  d.obligation = o;
  d.explanation = Explain(v);
  if (v.invalid()) d.model = v.model;
  d.wp_body = wp;
  return d;
}

class Run {
 public:
  Run(const Program& p, Generator& gen, const ImplicationChecker& check,
      const NeuralConfig& cfg)
      : p_(p), gen_(gen), check_(check), cfg_(cfg) {
    out_.transcript.program = p.name;
  }

  // Returns false on exhaustion; out_ then describes the failure.
  bool Go() {
    auto sp = std::make_shared<const SegmentedProgram>(SegmentProgram(p_));
    const int loops = sp->num_loops();
    Formula current = p_.post;
    const Segment& last = sp->LoopFree(loops + 1);
    if (!last.stmts.empty()) {
      current = Simplify(WpSegment(last, current));
      Event e = MakeSegmentEvent(loops + 1);
      e.formula = ToString(current);
      Log(std::move(e));
    }
    for (int k = loops; k >= 1; --k) {
      auto inv = SolveLoop(sp, k, current);
      if (!inv) return false;
      current = inv->Conjunction();
      std::vector<Stmt> before = sp->LoopFree(k).stmts;
      if (inv->ghost) {
        for (const auto& d : inv->ghost->decls) before.push_back(d);
      }
      if (!before.empty()) {
        current = Simplify(WpStmts(before, current));
        Event e = MakeSegmentEvent(k);
        e.formula = ToString(current);
        Log(std::move(e));
      }
      out_.invariants[k] = std::move(*inv);
    }
    CheckVerdict v = check_(p_.pre, current);
    Event e = MakeEvent(Event::Type::kPrecondition, 0, 0);
    e.obligation = "PreconditionEntailment";
    e.antecedent = ToString(p_.pre);
    e.consequent = ToString(current);
    e.verdict = v.ToString();
    Log(std::move(e));
    out_.precondition_entailment = std::move(v);
    out_.success = true;
    return true;
  }

  NeuralOutcome& outcome() { return out_; }

 private:
  void Log(Event e) { out_.transcript.events.push_back(std::move(e)); }

  std::optional<CandidateInvariant> SolveLoop(
      const std::shared_ptr<const SegmentedProgram>& sp, int k,
      const Formula& loop_post) {
    GenerationContext ctx = MakeGenerationContext(sp, k, loop_post, cfg_.seed);
    {
      Event e = MakeEvent(Event::Type::kLoopStart, k, 0);
      e.formula = ToString(loop_post);
      Log(std::move(e));
    }
    const Segment& seg = sp->Loop(k);
    std::optional<CandidateInvariant> cand;
    std::optional<FailedAttempt> pending;
    int attempt = 0;
    while (attempt < cfg_.max_refinement) {
      ++attempt;
      if (!cand) {
        const bool refining = pending.has_value();
        try {
          if (refining) {
            ++out_.refinement_count;
            cand = gen_.Refine(ctx, pending->candidate, pending->diagnostic);
          } else {
            cand = gen_.Generate(ctx).front();
          }
          cand->loop_id = k;
          CheckCandidate(p_, *cand);
        } catch (const MalformedReply& err) {
          cand.reset();
          LogMalformed(k, attempt, err.what());
          continue;
        } catch (const TypeError& err) {
          cand.reset();
          LogMalformed(k, attempt, err.what());
          continue;
        } catch (const RefinementStuck& err) {
          LogMalformed(k, attempt, err.what());
          break;
        } catch (const GeneratorExhausted& err) {
          LogMalformed(k, attempt, err.what());
          break;
        }
        Event e = MakeEvent(Event::Type::kCandidate, k, attempt);
        e.source = refining ? "refine" : "generate";
        e.candidate = cand->ToString();
        Log(std::move(e));
      }

      const Formula inv = cand->Conjunction();
      std::vector<Stmt> body = seg.body();
      if (cand->ghost) {
        for (const auto& s : cand->ghost->sets) body.push_back(s);
      }
      const Formula wp = Simplify(WpStmts(body, inv));

      Formula a1 = And(inv, seg.guard());
      CheckVerdict v1 = check_(a1, wp);
      LogCheck(k, attempt, "Implication1", *cand, a1, wp, v1);
      AskModel(ctx, *cand, Obligation::kImplication1, wp, k, attempt);
      if (!v1.valid()) {
        ++out_.implication1_failures;
        Fail(ctx, cand, pending, Diagnose(Obligation::kImplication1, v1, wp));
        continue;
      }
      Formula a2 = And(inv, Not(seg.guard()));
      CheckVerdict v2 = check_(a2, loop_post);
      LogCheck(k, attempt, "Implication2", *cand, a2, loop_post, v2);
      AskModel(ctx, *cand, Obligation::kImplication2, wp, k, attempt);
      if (!v2.valid()) {
        ++out_.implication2_failures;
        Fail(ctx, cand, pending, Diagnose(Obligation::kImplication2, v2, wp));
        continue;
      }
      Event e = MakeEvent(Event::Type::kValidated, k, attempt);
      e.candidate = cand->ToString();
      Log(std::move(e));
      return cand;
    }
    Event e = MakeEvent(Event::Type::kExhausted, k, attempt);
    Log(std::move(e));
    out_.failed_loop = k;
    out_.failed_attempts = attempt;
    return std::nullopt;
  }

  void Fail(GenerationContext& ctx, std::optional<CandidateInvariant>& cand,
            std::optional<FailedAttempt>& pending, FailureDiagnostic diag) {
    FailedAttempt f{std::move(*cand), std::move(diag)};
    ctx.failures.push_back(f);
    pending = std::move(f);
    cand.reset();
  }

  void LogMalformed(int k, int attempt, const std::string& what) {
    Event e = MakeEvent(Event::Type::kMalformed, k, attempt);
    e.note = what;
    Log(std::move(e));
  }

  void LogCheck(int k, int attempt, const char* name,
                const CandidateInvariant& c, const Formula& a,
                const Formula& q, const CheckVerdict& v) {
    Event e = MakeEvent(Event::Type::kCheck, k, attempt);
    e.obligation = name;
    e.candidate = c.ToString();
    e.antecedent = ToString(a);
    e.consequent = ToString(q);
    e.verdict = v.ToString();
    Log(std::move(e));
  }

  void AskModel(const GenerationContext& ctx, const CandidateInvariant& c,
                Obligation which, const Formula& wp, int k, int attempt) {
    if (!cfg_.llm_implication_checks) return;
    auto* llm = dynamic_cast<LlmGenerator*>(&gen_);
    if (!llm) return;
    Event e = MakeEvent(Event::Type::kLlmVerdict, k, attempt);
    e.obligation = ObligationName(which);
    try {
      e.note = llm->AskImplication(ctx, c, which, wp);
    } catch (const Error& err) {
      e.note = std::string("error: ") + err.what();
    }
    Log(std::move(e));
  }

  const Program& p_;
  Generator& gen_;
  const ImplicationChecker& check_;
  const NeuralConfig& cfg_;
  NeuralOutcome out_;
};

}  // namespace

const char* TranscriptEventName(TranscriptEvent::Type t) {
  switch (t) {
    case Event::Type::kSegmentWp: return "segment_wp";
    case Event::Type::kLoopStart: return "loop_start";
    case Event::Type::kCandidate: return "candidate";
    case Event::Type::kMalformed: return "malformed";
    case Event::Type::kCheck: return "check";
    case Event::Type::kLlmVerdict: return "llm_verdict";
    case Event::Type::kValidated: return "validated";
    case Event::Type::kExhausted: return "exhausted";
    case Event::Type::kPrecondition: return "precondition";
  }
  return "?";
}

std::string Transcript::ToJson(int indent) const {
  nlohmann::ordered_json events_json = nlohmann::ordered_json::array();
  for (size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    nlohmann::ordered_json j;
    j["seq"] = i + 1;
    j["type"] = TranscriptEventName(e.type);
    if (e.loop_id) j["loop_id"] = e.loop_id;
    if (e.segment_index) j["segment_index"] = e.segment_index;
    if (e.attempt) j["attempt"] = e.attempt;
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) j[key] = v;
    };
    put("obligation", e.obligation);
    put("source", e.source);
    put("candidate", e.candidate);
    put("antecedent", e.antecedent);
    put("consequent", e.consequent);
    put("formula", e.formula);
    put("verdict", e.verdict);
    put("note", e.note);
    events_json.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["program"] = program;
  doc["events"] = std::move(events_json);
  return doc.dump(indent);
}

RefinementExhausted::RefinementExhausted(
    int loop_id, int attempts, std::shared_ptr<const NeuralOutcome> partial)
    : Error("refinement limit reached for loop " + std::to_string(loop_id) +
            " after " + std::to_string(attempts) + " attempts"),
      loop_id_(loop_id),
      attempts_(attempts),
      partial_(std::move(partial)) {}

NeuralOutcome RunNeuralNoThrow(const Program& p, Generator& generator,
                               const ImplicationChecker& checker,
                               const NeuralConfig& cfg) {
  if (cfg.max_refinement < 1) throw Error("max_refinement must be >= 1");
  Run run(p, generator, checker, cfg);
  run.Go();
  return std::move(run.outcome());
}

NeuralOutcome RunNeural(const Program& p, Generator& generator,
                        const ImplicationChecker& checker,
                        const NeuralConfig& cfg) {
  NeuralOutcome out = RunNeuralNoThrow(p, generator, checker, cfg);
  if (!out.success) {
    int loop = out.failed_loop, attempts = out.failed_attempts;
    throw RefinementExhausted(
        loop, attempts, std::make_shared<const NeuralOutcome>(std::move(out)));
  }
  return out;
}

}  // namespace invgen
