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

#include <gtest/gtest.h>

#include <cstdio>
#include <deque>
#include <filesystem>

#include "invgen/error.h"
#include "invgen/generate.h"
#include "invgen/llm.h"
#include "invgen/logic.h"
#include "invgen/neural.h"
#include "invgen/parser.h"
#include "invgen/wp.h"
#include "test_support.h"

namespace invgen {
namespace {

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

HttpReply Ok(const std::string& content) {
  return {200, "{\"choices\":[{\"message\":{\"role\":\"assistant\",\"content\":\"" +
                   Escape(content) + "\"}}]}"};
}

// Replays scripted replies and records requests.
struct Stub {
  std::deque<std::function<HttpReply()>> script;
  std::vector<std::string> urls, bodies;
  std::vector<std::map<std::string, std::string>> headers;

  HttpTransport Transport() {
    return [this](const std::string& url, const std::string& body,
                  const std::map<std::string, std::string>& h) {
      urls.push_back(url);
      bodies.push_back(body);
      headers.push_back(h);
      if (script.empty()) return Ok("");
      auto next = script.front();
      if (script.size() > 1) script.pop_front();
      return next();
    };
  }
};

LlmConfig TestConfig() {
  LlmConfig cfg;
  cfg.base_url = "http://stub.local/v1";
  cfg.model = "stub-model";
  cfg.api_key = "k";
  cfg.backoff = std::chrono::milliseconds(1);
  return cfg;
}

TEST(LlmClient, ReturnsReplyVerbatim) {
  Stub stub;
  stub.script.push_back([] { return Ok("hello\nworld"); });
  LlmClient client(TestConfig(), stub.Transport());
  EXPECT_EQ(client.Complete("ping"), "hello\nworld");
  ASSERT_EQ(stub.urls.size(), 1u);
  EXPECT_EQ(stub.urls[0], "http://stub.local/v1/chat/completions");
  EXPECT_NE(stub.bodies[0].find("\"stub-model\""), std::string::npos);
  EXPECT_NE(stub.bodies[0].find("\"ping\""), std::string::npos);
  EXPECT_EQ(stub.headers[0].at("Authorization"), "Bearer k");
}

TEST(LlmClient, RetriesTransientFailures) {
  Stub stub;
  stub.script.push_back([]() -> HttpReply { throw TransportError("reset", true); });
  stub.script.push_back([] { return HttpReply{503, "busy"}; });
  stub.script.push_back([] { return Ok("done"); });
  auto audit = std::filesystem::temp_directory_path() / "invgen_llm_audit_test.jsonl";
  std::filesystem::remove(audit);
  LlmConfig cfg = TestConfig();
  cfg.audit_path = audit.string();
  LlmClient client(cfg, stub.Transport());
  EXPECT_EQ(client.Complete("ping"), "done");
  EXPECT_EQ(client.requests(), 3);
  std::string log = testing::ReadFile(audit.string());
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 3);
  EXPECT_NE(log.find("\"latency_ms\""), std::string::npos);
  EXPECT_NE(log.find("\"timestamp\""), std::string::npos);
  std::filesystem::remove(audit);
}

TEST(LlmClient, GivesUpAfterMaxRetries) {
  Stub stub;
  stub.script.push_back([] { return HttpReply{500, "down"}; });
  LlmClient client(TestConfig(), stub.Transport());
  try {
    client.Complete("ping");
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.transient());
  }
  EXPECT_EQ(client.requests(), 4);
}

TEST(LlmClient, AuthErrorIsNotRetried) {
  Stub stub;
  stub.script.push_back([] { return HttpReply{401, "no"}; });
  LlmClient client(TestConfig(), stub.Transport());
  EXPECT_THROW(client.Complete("ping"), AuthError);
  EXPECT_EQ(client.requests(), 1);
}

TEST(LlmClient, ClientErrorIsPermanent) {
  Stub stub;
  stub.script.push_back([] { return HttpReply{400, "bad"}; });
  LlmClient client(TestConfig(), stub.Transport());
  try {
    client.Complete("ping");
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.transient());
  }
  EXPECT_EQ(client.requests(), 1);
}

TEST(LlmClient, MalformedBody) {
  Stub stub;
  stub.script.push_back([] { return HttpReply{200, "{\"nothing\":1}"}; });
  LlmClient client(TestConfig(), stub.Transport());
  EXPECT_THROW(client.Complete("ping"), MalformedReply);
}

const std::map<std::string, Sort> kScope{
    {"i", Sort::kInt}, {"n", Sort::kInt}, {"s", Sort::kInt}, {"a", Sort::kArray}};

TEST(Extract, FencedBlock) {
  auto e = ExtractInvariant(
      "Reasoning first.\n```invariant\n0 <= i && i <= n\n```\nDone.", kScope);
  ASSERT_EQ(e.conjuncts.size(), 2u);
  EXPECT_TRUE(e.ghost.empty());
}

TEST(Extract, LastParsableBlockWins) {
  auto e = ExtractInvariant(
      "```\ni <= n\n```\nthen\n```java\n0 <= i\n```\n```\nnot a formula ((\n```", kScope);
  ASSERT_EQ(e.conjuncts.size(), 1u);
  EXPECT_EQ(ToString(e.conjuncts[0]), "0 <= i");
}

TEST(Extract, GhostLines) {
  auto e = ExtractInvariant(
      "```invariant\n//@ ghost int w = 0;\n//@ set w = i;\n0 <= w && w <= i\n```", kScope);
  ASSERT_EQ(e.ghost.decls.size(), 1u);
  ASSERT_EQ(e.ghost.sets.size(), 1u);
  EXPECT_EQ(e.ghost.decls[0].target, "w");
  EXPECT_EQ(e.conjuncts.size(), 2u);
}

TEST(Extract, FallbackToLastLine) {
  auto e = ExtractInvariant("The invariant is:\ni <= n AND 0 <= i\nHope it helps", kScope);
  EXPECT_EQ(e.conjuncts.size(), 2u);
}

TEST(Extract, Malformed) {
  EXPECT_THROW(ExtractInvariant("I cannot help with that.", kScope), MalformedReply);
  EXPECT_THROW(ExtractInvariant("```\nq <= n\n```", kScope), MalformedReply);
}

TEST(LlmGenerator, GeneratesAndRefines) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  auto sp = std::make_shared<SegmentedProgram>(SegmentProgram(p));
  GenerationContext ctx = MakeGenerationContext(sp, 1, p.post);
  Stub stub;
  stub.script.push_back([] { return Ok("```invariant\ns * 2 == i * (i - 1)\n```"); });
  auto client = std::make_shared<LlmClient>(TestConfig(), stub.Transport());
  LlmGenerator gen(client);
  auto cands = gen.Generate(ctx);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].provenance, Provenance::kLlm);
  EXPECT_NE(stub.bodies[0].find("Loop Postcondition"), std::string::npos);
  // Same reply again: no distinct candidate.
  FailureDiagnostic diag{Obligation::kImplication2, "exit", std::nullopt, True()};
  EXPECT_THROW(gen.Refine(ctx, cands[0], diag), RefinementStuck);
  stub.script.clear();
  stub.script.push_back(
      [] { return Ok("```invariant\n0 <= i && i <= n && s * 2 == i * (i - 1)\n```"); });
  CandidateInvariant refined = gen.Refine(ctx, cands[0], diag);
  EXPECT_EQ(refined.conjuncts.size(), 3u);
}

TEST(LlmGenerator, OutOfScopeReplyIsMalformed) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  auto sp = std::make_shared<SegmentedProgram>(SegmentProgram(p));
  GenerationContext ctx = MakeGenerationContext(sp, 1, p.post);
  Stub stub;
  stub.script.push_back([] { return Ok("```invariant\nzz <= n\n```"); });
  LlmGenerator gen(std::make_shared<LlmClient>(TestConfig(), stub.Transport()));
  EXPECT_THROW(gen.Generate(ctx), MalformedReply);
}

TEST(LlmGenerator, DrivesNeuralStage) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  Stub stub;
  stub.script.push_back([] { return Ok("```invariant\ni <= n\n```"); });
  stub.script.push_back(
      [] { return Ok("```invariant\n0 <= i && i <= n && s * 2 == i * (i - 1)\n```"); });
  LlmGenerator gen(std::make_shared<LlmClient>(TestConfig(), stub.Transport()));
  NeuralOutcome out = RunNeuralNoThrow(p, gen, BoundedChecker(4));
  EXPECT_TRUE(out.success);
  EXPECT_EQ(out.refinement_count, 1);
  EXPECT_EQ(out.implication2_failures, 1);
}

TEST(LlmGenerator, AnnotatedReply) {
  Program p = testing::LoadCorpusProgram("single-loop/sum");
  std::string reply = "```java\n" +
                      RenderProgram(p, std::map<int, Formula>{
                                           {1, ParseFormula("i <= n", p.Scope())}}) +
                      "```\n";
  auto invs = InvariantsFromAnnotatedReply(reply, p);
  ASSERT_EQ(invs.size(), 1u);
  EXPECT_EQ(invs.at(1).ToString(), "i <= n");
  Program other = ParseProgram("method sum(int n)\n{\n}\n");
  EXPECT_THROW(InvariantsFromAnnotatedReply(reply, other), MalformedReply);
}

}  // namespace
}  // namespace invgen
