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

#include "invgen/llm.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <semaphore>
#include <sstream>
#include <thread>
#include <utility>

#include "httplib.h"
#include "invgen/error.h"
#include "invgen/parser.h"
#include "json.hpp"

namespace invgen {
namespace {

using json = nlohmann::json;

std::string Timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                now.time_since_epoch()).count() % 1000;
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3)
      << std::setfill('0') << ms << 'Z';
  return out.str();
}

// Splits scheme://host[:port][/path] into the origin and the path prefix.
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  size_t scheme = url.find("://");
  size_t from = scheme == std::string::npos ? 0 : scheme + 3;
  size_t slash = url.find('/', from);
  if (slash == std::string::npos) return {url, ""};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool StartsWith(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Fenced blocks in order of appearance.
std::vector<std::vector<std::string>> FencedBlocks(const std::string& text) {
  std::vector<std::vector<std::string>> blocks;
  bool open = false;
  for (const auto& raw : Lines(text)) {
    std::string line = Trim(raw);
    if (StartsWith(line, "```")) {
      if (open) {
        open = false;
      } else {
        open = true;
        blocks.emplace_back();
      }
      continue;
    }
    if (open) blocks.back().push_back(raw);
  }
  return blocks;
}

// Drops a leading //@ loop_invariant or //@ and a trailing semicolon.
std::string CleanFormulaLine(std::string line) {
  line = Trim(line);
  for (const char* prefix : {"//@", "loop_invariant", "maintaining"}) {
    if (StartsWith(line, prefix)) line = Trim(line.substr(std::strlen(prefix)));
  }
  while (!line.empty() && (line.back() == ';' || line.back() == '`')) {
    line.pop_back();
  }
  while (!line.empty() && line.front() == '`') line.erase(line.begin());
  return Trim(line);
}

std::optional<ExtractedInvariant> ParseBlock(
    const std::vector<std::string>& lines,
    const std::map<std::string, Sort>& scope) {
  ExtractedInvariant out;
  auto ext = scope;
  std::vector<std::string> formula_lines;
  std::vector<std::pair<std::string, std::string>> sets;
  try {
    for (const auto& raw : lines) {
      std::string line = Trim(raw);
      if (line.empty()) continue;
      std::string body = line;
      if (StartsWith(body, "//@")) body = Trim(body.substr(3));
      if (StartsWith(body, "ghost ")) {
        body = Trim(body.substr(6));
        if (StartsWith(body, "int ")) body = Trim(body.substr(4));
        size_t eq = body.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string name = Trim(body.substr(0, eq));
        Expr init = ParseTerm(CleanFormulaLine(body.substr(eq + 1)), ext);
        out.ghost.decls.push_back(Stmt::GhostDecl(name, init));
        ext[name] = Sort::kInt;
      } else if (StartsWith(body, "set ")) {
        body = Trim(body.substr(4));
        size_t eq = body.find('=');
        if (eq == std::string::npos) return std::nullopt;
        sets.emplace_back(Trim(body.substr(0, eq)),
                          CleanFormulaLine(body.substr(eq + 1)));
      } else {
        formula_lines.push_back(CleanFormulaLine(line));
      }
    }
    for (const auto& [name, text] : sets) {
      if (!ext.count(name) || scope.count(name)) return std::nullopt;
      out.ghost.sets.push_back(Stmt::GhostSet(name, ParseTerm(text, ext)));
    }
    bool per_line = true;
    std::vector<Formula> conjuncts;
    for (const auto& line : formula_lines) {
      if (line.empty()) continue;
      try {
        for (auto& c : Conjuncts(ParseFormula(line, ext))) {
          conjuncts.push_back(std::move(c));
        }
      } catch (const Error&) {
        per_line = false;
        break;
      }
    }
    if (!per_line) {
      std::string joined;
      for (const auto& line : formula_lines) joined += line + " ";
      conjuncts = Conjuncts(ParseFormula(joined, ext));
    }
    if (conjuncts.empty()) return std::nullopt;
    out.conjuncts = std::move(conjuncts);
  } catch (const Error&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

HttpTransport MakeHttpTransport(std::chrono::milliseconds timeout) {
  return [timeout](const std::string& url, const std::string& body,
                   const std::map<std::string, std::string>& headers) {
    auto [origin, path] = SplitUrl(url);
    httplib::Client client(origin);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(path.empty() ? "/" : path, h, body,
                           "application/json");
    if (!res) {
      throw TransportError("request to " + url + " failed: " +
                               httplib::to_string(res.error()),
                           true);
    }
    return HttpReply{res->status, res->body};
  };
}

struct LlmClient::Shared {
  explicit Shared(int cap) : slots(std::clamp(cap, 1, 64)) {}
  std::counting_semaphore<64> slots;
  std::mutex audit_mu;
  std::atomic<int> requests{0};
};

LlmClient::LlmClient(LlmConfig config, HttpTransport transport)
    : config_(std::move(config)),
      transport_(transport ? std::move(transport)
                           : MakeHttpTransport(config_.timeout)),
      shared_(std::make_unique<Shared>(config_.max_concurrency)) {
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("INVGEN_LLM_KEY")) config_.api_key = key;
  }
}

LlmClient::~LlmClient() = default;

int LlmClient::requests() const { return shared_->requests.load(); }

std::string LlmClient::Complete(const std::string& prompt) {
  json messages = json::array();
  if (!config_.system_message.empty()) {
    messages.push_back({{"role", "system"}, {"content", config_.system_message}});
  }
  messages.push_back({{"role", "user"}, {"content", prompt}});
  const std::string body =
      json{{"model", config_.model}, {"messages", messages}}.dump();
  std::string base = config_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  const std::string url = base + "/chat/completions";
  std::map<std::string, std::string> headers;
  if (!config_.api_key.empty()) {
    headers["Authorization"] = "Bearer " + config_.api_key;
  }

  auto audit = [&](int attempt, int status, const std::string* reply,
                   const std::string& error, double latency_ms) {
    if (config_.audit_path.empty()) return;
    json rec{{"timestamp", Timestamp()}, {"attempt", attempt},
             {"url", url},               {"model", config_.model},
             {"prompt", prompt},         {"status", status},
             {"latency_ms", latency_ms}};
    rec["reply"] = reply ? json(*reply) : json(nullptr);
    if (!error.empty()) rec["error"] = error;
    std::lock_guard<std::mutex> lock(shared_->audit_mu);
    std::ofstream out(config_.audit_path, std::ios::app);
    out << rec.dump() << '\n';
  };

  for (int attempt = 0;; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(config_.backoff * (1 << (attempt - 1)));
    }
    bool last = attempt >= config_.max_retries;
    HttpReply reply;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
          .count();
    };
    try {
      shared_->slots.acquire();
      ++shared_->requests;
      try {
        reply = transport_(url, body, headers);
      } catch (...) {
        shared_->slots.release();
        throw;
      }
      shared_->slots.release();
    } catch (const TransportError& e) {
      audit(attempt + 1, 0, nullptr, e.what(), elapsed());
      if (!e.transient() || last) throw;
      continue;
    }
    double latency = elapsed();
    if (reply.status == 401 || reply.status == 403) {
      audit(attempt + 1, reply.status, nullptr, reply.body, latency);
      throw AuthError("endpoint rejected credentials (HTTP " +
                      std::to_string(reply.status) + ")");
    }
    if (reply.status == 429 || reply.status >= 500) {
      audit(attempt + 1, reply.status, nullptr, reply.body, latency);
      if (last) {
        throw TransportError(
            "HTTP " + std::to_string(reply.status) + " after retries", true);
      }
      continue;
    }
    if (reply.status < 200 || reply.status >= 300) {
      audit(attempt + 1, reply.status, nullptr, reply.body, latency);
      throw TransportError("HTTP " + std::to_string(reply.status), false);
    }
    std::string content;
    try {
      json doc = json::parse(reply.body);
      content = doc.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
    } catch (const json::exception& e) {
      audit(attempt + 1, reply.status, nullptr, e.what(), latency);
      throw MalformedReply(std::string("unexpected completion body: ") +
                           e.what());
    }
    audit(attempt + 1, reply.status, &content, "", latency);
    return content;
  }
}

std::string LlmComplete(const std::string& prompt, const LlmConfig& config) {
  LlmClient client(config);
  return client.Complete(prompt);
}

const std::string& InvariantReplyFormat() {
  static const auto* const kText = new std::string(
      "Write the final loop invariant inside a fenced code block that starts "
      "with ```invariant and ends with ```. Put one conjunct per line. "
      "Use C-style operators (&&, ||, !, ==>) and write array lengths as "
      "a.length. Write bounded quantifiers as "
      "(\\forall int k; lo <= k && k < hi; body) or "
      "(\\exists int k; lo <= k && k < hi; body). "
      "Ghost variables go in the same block as //@ ghost int w = e; "
      "for the declaration before the loop and //@ set w = e; for the update "
      "at the end of the loop body.");
  return *kText;
}

ExtractedInvariant ExtractInvariant(const std::string& reply,
                                    const std::map<std::string, Sort>& scope) {
  auto blocks = FencedBlocks(reply);
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    if (auto parsed = ParseBlock(*it, scope)) return *parsed;
  }
  auto lines = Lines(reply);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::string line = CleanFormulaLine(*it);
    if (line.empty()) continue;
    try {
      auto conjuncts = Conjuncts(ParseFormula(line, scope));
      if (!conjuncts.empty()) return ExtractedInvariant{conjuncts, {}};
    } catch (const Error&) {
    }
  }
  throw MalformedReply("no parsable invariant in reply");
}

}  // namespace invgen
