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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "invgen/bench.h"
#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/logic.h"
#include "invgen/neural.h"
#include "invgen/segment.h"
#include "invgen/symbolic.h"
#include "invgen/wp.h"

namespace invgen {
namespace {

uint64_t SplitMix(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// First template candidate per loop, chained backwards without checks.
InvariantMap AdhocTemplate(const Program& p, Generator& gen, uint64_t seed) {
  auto sp = std::make_shared<const SegmentedProgram>(SegmentProgram(p));
  const int loops = sp->num_loops();
  Formula current = Simplify(WpSegment(sp->LoopFree(loops + 1), p.post));
  InvariantMap out;
  for (int k = loops; k >= 1; --k) {
    GenerationContext ctx = MakeGenerationContext(sp, k, current, seed);
    CandidateInvariant c = gen.Generate(ctx).front();
    c.loop_id = k;
    std::vector<Stmt> before = sp->LoopFree(k).stmts;
    if (c.ghost) {
      before.insert(before.end(), c.ghost->decls.begin(), c.ghost->decls.end());
    }
    current = Simplify(WpStmts(before, c.Conjunction()));
    out[k] = std::move(c);
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

RunRecord Execute(const CorpusEntry& entry, Method method, int run,
                  const ExperimentConfig& cfg,
                  const std::shared_ptr<LlmClient>& client) {
  if (!cfg.checker) throw Error("experiment needs an implication checker");
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.program = entry.id;
  rec.category = entry.category;
  rec.run = run;
  rec.method = method;
  const Program& p = entry.program;
  const uint64_t seed = DeriveSeed(cfg.root_seed, entry.id, run);

  std::filesystem::path art;
  if (!cfg.artifacts_dir.empty()) {
    std::string file = entry.id;
    std::replace(file.begin(), file.end(), '/', '_');
    art = std::filesystem::path(cfg.artifacts_dir) / MethodName(method) /
          ("run" + std::to_string(run)) / file;
  }
  auto save = [&](const std::string& suffix, const std::string& text) {
    if (!art.empty()) WriteFile(art.string() + suffix, text);
  };

  std::unique_ptr<Generator> gen;
  std::unique_ptr<Repairer> repairer;
  if (cfg.generator == GeneratorMode::kTemplate) {
    gen = std::make_unique<TemplateGenerator>();
    repairer = std::make_unique<TemplateRepairer>(*gen, seed);
  } else {
    gen = std::make_unique<LlmGenerator>(client);
    repairer = std::make_unique<LlmRepairer>(client);
  }

  bool neural_done = false;
  try {
    InvariantMap invs;
    if (method == Method::kAdhoc) {
      invs = cfg.generator == GeneratorMode::kTemplate
                 ? AdhocTemplate(p, *gen, seed)
                 : AdhocInvariants(*client, p);
    } else {
      NeuralConfig ncfg;
      ncfg.max_refinement = cfg.max_refinement;
      ncfg.seed = seed;
      NeuralOutcome n = RunNeuralNoThrow(p, *gen, cfg.checker, ncfg);
      rec.refinement_iters = n.refinement_count;
      rec.implication1_failures = n.implication1_failures;
      rec.implication2_failures = n.implication2_failures;
      save(".transcript.json", n.transcript.ToJson());
      if (!n.success) {
        rec.failure_stage = FailureStage::kRefinement;
        rec.note = "refinement limit reached for loop " +
                   std::to_string(n.failed_loop);
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start).count();
        return rec;
      }
      invs = std::move(n.invariants);
    }
    neural_done = true;
    if (method == Method::kNeuroInv) {
      SymbolicConfig scfg;
      scfg.max_repair = cfg.max_repair;
      SymbolicOutcome s =
          RunSymbolicNoThrow(p, invs, *repairer, cfg.checker, scfg);
      rec.repair_iters = s.repairs;
      rec.success = s.verified;
      save(".result.json", SymbolicRecordJson(p, s));
      if (s.verified) save(".annotated.imp", s.annotated);
    } else {
      VerificationResult v = Verify(p, invs, cfg.checker);
      rec.success = v.verified;
      if (v.verified) save(".annotated.imp", RenderAnnotated(p, invs));
      if (!v.verified) rec.note = v.Table();
    }
    if (!rec.success) rec.failure_stage = FailureStage::kRepair;
  } catch (const SolverLaunchError&) {
    throw;
  } catch (const AuthError&) {
    throw;
  } catch (const Error& e) {
    rec.success = false;
    rec.failure_stage =
        neural_done ? FailureStage::kRepair : FailureStage::kRefinement;
    rec.note = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::shared_ptr<LlmClient> MakeClient(const ExperimentConfig& cfg) {
  if (cfg.generator != GeneratorMode::kLlm) return nullptr;
  LlmConfig lc = cfg.llm;
  if (lc.system_message.empty()) lc.system_message = InvariantReplyFormat();
  return std::make_shared<LlmClient>(lc);
}

}  // namespace

uint64_t DeriveSeed(uint64_t root, const std::string& program, int run) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : program) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return SplitMix(SplitMix(root) ^ h ^ SplitMix(static_cast<uint64_t>(run)));
}

RunRecord RunOne(const CorpusEntry& entry, Method method, int run,
                 const ExperimentConfig& cfg) {
  return Execute(entry, method, run, cfg, MakeClient(cfg));
}

std::vector<RunRecord> RunExperiment(const Corpus& corpus,
                                     const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw Error("runs must be >= 1");
  auto client = MakeClient(cfg);
  std::vector<RunRecord> out;
  const size_t n = corpus.entries.size();
  for (Method method : cfg.methods) {
    for (int run = 1; run <= cfg.runs; ++run) {
      std::vector<RunRecord> row(n);
      std::atomic<size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mu;
      auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
          try {
            row[i] = Execute(corpus.entries[i], method, run, cfg, client);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      };
      int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(n)));
      std::vector<std::thread> pool;
      for (int w = 1; w < workers; ++w) pool.emplace_back(work);
      work();
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
      out.insert(out.end(), row.begin(), row.end());
    }
  }
  return out;
}

}  // namespace invgen
