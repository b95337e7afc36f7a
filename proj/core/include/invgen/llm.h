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

// Chat-completion client and the LLM-backed invariant generator.

#ifndef INVGEN_LLM_H_
#define INVGEN_LLM_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "invgen/generate.h"

namespace invgen {

struct HttpReply {
  int status = 0;
  std::string body;
};

// POSTs a JSON body. Throws TransportError(transient) when no reply arrives.
using HttpTransport = std::function<HttpReply(
    const std::string& url, const std::string& body,
    const std::map<std::string, std::string>& headers)>;

HttpTransport MakeHttpTransport(std::chrono::milliseconds timeout);

struct LlmConfig {
  // e.g. http://localhost:8000/v1
  std::string base_url;
  std::string model;
  // Empty means read INVGEN_LLM_KEY.
  std::string api_key;
  // Sent before the prompt when non-empty.
  std::string system_message;
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
  std::chrono::milliseconds timeout{120000};
  int max_concurrency = 4;
  // JSON lines, one record per request. Empty disables the log.
  std::string audit_path;
};

class LlmClient {
 public:
  // A null transport means MakeHttpTransport(config.timeout).
  explicit LlmClient(LlmConfig config, HttpTransport transport = nullptr);
  ~LlmClient();

  // Single-turn completion with retries on transient failures. Throws
  // TransportError, AuthError or MalformedReply.
  std::string Complete(const std::string& prompt);

  // Requests sent so far, retries included.
  int requests() const;
  const LlmConfig& config() const { return config_; }

 private:
  struct Shared;
  LlmConfig config_;
  HttpTransport transport_;
  std::unique_ptr<Shared> shared_;
};

// One-shot convenience wrapper around LlmClient.
std::string LlmComplete(const std::string& prompt, const LlmConfig& config);

// System message describing the reply format the extractor understands.
const std::string& InvariantReplyFormat();

// Invariant conjuncts and ghost code pulled out of a model reply.
struct ExtractedInvariant {
  std::vector<Formula> conjuncts;
  GhostAugmentation ghost;
};

// Reads the last fenced block that parses; otherwise the last parsable
// line. Ghost lines (//@ ghost int w = e; //@ set w = e;) are accepted
// inside the block. Throws MalformedReply.
ExtractedInvariant ExtractInvariant(const std::string& reply,
                                    const std::map<std::string, Sort>& scope);

struct LlmGeneratorOptions {
  // Ask the model for implication verdicts too (the solver decides either
  // way; the replies are only logged).
  bool llm_implication_checks = false;
};

class LlmGenerator : public Generator {
 public:
  LlmGenerator(std::shared_ptr<LlmClient> client,
               LlmGeneratorOptions options = {});

  std::vector<CandidateInvariant> Generate(
      const GenerationContext& ctx) override;
  CandidateInvariant Refine(const GenerationContext& ctx,
                            const CandidateInvariant& failed,
                            const FailureDiagnostic& diag) override;
  std::string name() const override { return "llm"; }

  // Plain-text answers to the imp1/imp2 prompts, for fidelity experiments.
  std::string AskImplication(const GenerationContext& ctx,
                             const CandidateInvariant& candidate,
                             Obligation which, const Formula& wp_body);

 private:
  CandidateInvariant Parse(const GenerationContext& ctx,
                           const std::string& reply, int attempt) const;

  std::shared_ptr<LlmClient> client_;
  LlmGeneratorOptions options_;
};

// Invariants from a reply that returns the whole annotated method, taken from
// the last fenced block (or the bare reply) that parses with unchanged code.
// Throws MalformedReply.
std::map<int, CandidateInvariant> InvariantsFromAnnotatedReply(
    const std::string& reply, const Program& p);

// The adhoc baseline: one prompt, invariants for every loop at once.
std::map<int, CandidateInvariant> AdhocInvariants(LlmClient& client,
                                                  const Program& p);

}  // namespace invgen

#endif  // INVGEN_LLM_H_
