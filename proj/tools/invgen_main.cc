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

// invgen: loop invariant inference and verification for MiniImp.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "invgen/bench.h"
#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/llm.h"
#include "invgen/logic.h"
#include "invgen/neural.h"
#include "invgen/parser.h"
#include "invgen/segment.h"
#include "invgen/solver.h"
#include "invgen/symbolic.h"
#include "invgen/wp.h"

namespace fs = std::filesystem;
using namespace invgen;

namespace {

constexpr int kOk = 0;
constexpr int kNotVerified = 1;
constexpr int kEnvError = 2;

struct Options {
  std::string file;
  std::string post;
  std::string generator = "template";
  std::string solver;
  int solver_timeout_ms = 10000;
  int max_refinement = 5;
  int max_repair = 5;
  int runs = 5;
  uint64_t seed = 0;
  int jobs = 1;
  std::string methods = "adhoc,neuroinv-star,neuroinv";
  std::string llm_base;
  std::string llm_model;
  std::string out;
};

std::string Timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
  return buf;
}

fs::path OutDir(const Options& o) {
  fs::path dir = o.out.empty() ? fs::path("runs") / Timestamp() : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

ImplicationChecker MakeChecker(const Options& o) {
  SolverConfig cfg;
  cfg.path = ResolveSolverPath(o.solver);
  cfg.timeout_ms = o.solver_timeout_ms;
  cfg.seed = o.seed;
  return SolverChecker(std::make_shared<Solver>(cfg));
}

LlmConfig MakeLlmConfig(const Options& o, const fs::path& dir) {
  if (o.llm_base.empty()) throw Error("--generator llm needs --llm-base");
  LlmConfig cfg;
  cfg.base_url = o.llm_base;
  cfg.model = o.llm_model;
  cfg.system_message = InvariantReplyFormat();
  cfg.audit_path = (dir / "llm_audit.jsonl").string();
  return cfg;
}

bool UseLlm(const Options& o) {
  if (o.generator == "llm") return true;
  if (o.generator == "template") return false;
  throw Error("--generator must be template or llm");
}

void PrintTable(const VerificationResult& v) {
  for (const auto& ob : v.obligations) {
    std::cout << "  " << ObligationKindName(ob.kind);
    if (ob.loop_id) std::cout << " (loop " << ob.loop_id << ")";
    std::cout << ": " << ob.verdict.ToString() << "\n";
  }
}

int CmdInfer(const Options& o) {
  Program p = ParseProgramFile(o.file);
  auto checker = MakeChecker(o);
  fs::path dir = OutDir(o);
  std::unique_ptr<Generator> gen;
  std::unique_ptr<Repairer> repairer;
  if (UseLlm(o)) {
    auto client = std::make_shared<LlmClient>(MakeLlmConfig(o, dir));
    gen = std::make_unique<LlmGenerator>(client);
    repairer = std::make_unique<LlmRepairer>(client);
  } else {
    gen = std::make_unique<TemplateGenerator>();
    repairer = std::make_unique<TemplateRepairer>(*gen, o.seed);
  }
  NeuralConfig ncfg;
  ncfg.max_refinement = o.max_refinement;
  ncfg.seed = o.seed;
  NeuralOutcome n = RunNeuralNoThrow(p, *gen, checker, ncfg);
  WriteText(dir / (p.name + ".transcript.json"), n.transcript.ToJson());
  if (!n.success) {
    std::cout << "not verified: refinement limit reached for loop "
              << n.failed_loop << " after " << n.failed_attempts
              << " attempts\n";
    return kNotVerified;
  }
  std::cout << "neural: " << n.invariants.size() << " invariant(s), "
            << n.refinement_count << " refinement(s), precondition "
            << (n.precondition_entailment
                    ? n.precondition_entailment->ToString()
                    : std::string("n/a"))
            << "\n";
  SymbolicConfig scfg;
  scfg.max_repair = o.max_repair;
  SymbolicOutcome s =
      RunSymbolicNoThrow(p, n.invariants, *repairer, checker, scfg);
  WriteText(dir / (p.name + ".result.json"), SymbolicRecordJson(p, s));
  if (!s.verified) {
    std::cout << "not verified: repair limit reached after " << s.verify_calls
              << " verification round(s)\n";
    PrintTable(s.last);
    return kNotVerified;
  }
  fs::path annotated = dir / (p.name + ".annotated.imp");
  WriteText(annotated, s.annotated);
  std::cout << "verified after " << s.repairs << " repair(s)\n"
            << s.annotated << "written to " << annotated.string() << "\n";
  return kOk;
}

int CmdVerify(const Options& o) {
  Program p = ParseProgramFile(o.file);
  InvariantMap invs;
  for (const auto& [k, conjuncts] : p.annotations) {
    CandidateInvariant c;
    c.loop_id = k;
    c.conjuncts = conjuncts;
    invs[k] = std::move(c);
  }
  auto checker = MakeChecker(o);
  VerificationResult v = Verify(p, invs, checker);
  std::cout << (v.verified ? "verified" : "not verified") << "\n";
  PrintTable(v);
  return v.verified ? kOk : kNotVerified;
}

std::vector<Method> ParseMethods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(ParseMethod(item));
  }
  if (out.empty()) throw Error("--methods is empty");
  return out;
}

int CmdBench(const Options& o) {
  Corpus corpus = LoadCorpus(o.file);
  ExperimentConfig cfg;
  cfg.methods = ParseMethods(o.methods);
  cfg.runs = o.runs;
  cfg.root_seed = o.seed;
  cfg.max_refinement = o.max_refinement;
  cfg.max_repair = o.max_repair;
  cfg.workers = o.jobs;
  fs::path dir = OutDir(o);
  if (UseLlm(o)) {
    cfg.generator = GeneratorMode::kLlm;
    cfg.llm = MakeLlmConfig(o, dir);
  }
  cfg.checker = MakeChecker(o);
  cfg.artifacts_dir = (dir / "artifacts").string();
  auto records = RunExperiment(corpus, cfg);
  std::vector<int> ks;
  for (int k : {1, 3, 5}) {
    if (k <= o.runs) ks.push_back(k);
  }
  MetricsReport report = ComputeMetrics(records, ks);
  EmitReport(report, "json", (dir / "report.json").string());
  EmitReport(report, "csv", (dir / "report.csv").string());
  WriteText(dir / "records.jsonl", RecordsJsonl(records));
  for (const auto& m : report.methods) {
    std::printf("%-14s success %6.2f%% (sd %.2f)  refinements %.2f  repairs %.2f",
                m.method.c_str(), m.avg_success_rate, m.std_dev_success_rate,
                m.avg_refinement_iters, m.avg_repair_iters);
    for (const auto& [k, v] : m.pass_at_k) std::printf("  pass@%d %.3f", k, v);
    std::printf("\n");
  }
  std::cout << "report written to " << dir.string() << "\n";
  return kOk;
}

int CmdWp(const Options& o) {
  Program p = ParseProgramFile(o.file);
  Formula post = o.post.empty() ? p.post : ParseFormula(o.post, p.Scope());
  std::cout << ToString(Simplify(WpStmts(p.body, post))) << "\n";
  return kOk;
}

int CmdSegment(const Options& o) {
  std::cout << RenderMarkers(SegmentProgram(ParseProgramFile(o.file)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Loop invariant inference and verification for MiniImp programs.",
               "invgen"};
  app.require_subcommand(1);
  app.add_option("--generator", o.generator,
                 "Candidate generator: template or llm (default template)");
  app.add_option("--solver", o.solver,
                 "SMT solver executable (default $INVGEN_SOLVER, then z3)");
  app.add_option("--solver-timeout-ms", o.solver_timeout_ms,
                 "Per-query solver timeout in ms (default 10000)");
  app.add_option("--max-refinement", o.max_refinement,
                 "Refinement attempts per loop (default 5)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-repair", o.max_repair,
                 "Verification rounds with repair (default 5)")
      ->check(CLI::PositiveNumber);
  app.add_option("--runs", o.runs, "Independent runs for bench (default 5)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Root seed (default 0)");
  app.add_option("--jobs", o.jobs, "Programs processed in parallel by bench (default 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--llm-base", o.llm_base,
                 "Chat-completion base URL, e.g. http://localhost:8000/v1");
  app.add_option("--llm-model", o.llm_model, "Model name sent to the endpoint");
  app.add_option("--out", o.out, "Output directory (default runs/<timestamp>)");

  auto* infer = app.add_subcommand("infer", "Infer invariants, verify, write the annotated program");
  infer->add_option("file", o.file, "MiniImp source")->required();
  auto* verify = app.add_subcommand("verify", "Verify the loop_invariant annotations of a program");
  verify->add_option("file", o.file, "Annotated MiniImp source")->required();
  auto* bench = app.add_subcommand("bench", "Run the experiment protocol over a corpus");
  bench->add_option("corpus", o.file, "Corpus directory with a manifest")->required();
  bench->add_option("--methods", o.methods,
                    "Comma-separated: adhoc, neuroinv-star, neuroinv (default all)");
  auto* wp = app.add_subcommand("wp", "Print the weakest precondition of a loop-free body");
  wp->add_option("file", o.file, "MiniImp source")->required();
  wp->add_option("--post", o.post, "Postcondition (default: the method's ensures)");
  auto* segment = app.add_subcommand("segment", "Print the segmented marker view");
  segment->add_option("file", o.file, "MiniImp source")->required();
  for (auto* sub : {infer, verify, bench, wp, segment}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kEnvError;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kEnvError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kEnvError;
  }

  try {
    if (*infer) return CmdInfer(o);
    if (*verify) return CmdVerify(o);
    if (*bench) return CmdBench(o);
    if (*wp) return CmdWp(o);
    if (*segment) return CmdSegment(o);
  } catch (const SolverLaunchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvError;
  }
  return kEnvError;
}
