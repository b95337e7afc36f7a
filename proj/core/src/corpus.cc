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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "invgen/bench.h"
#include "invgen/error.h"
#include "invgen/parser.h"

namespace invgen {

const std::vector<std::string>& CorpusCategories() {
  static const auto* const kCategories = new std::vector<std::string>{
      "single-loop", "array-forall", "multi-loop", "noisy",
      "random-branch", "array-exists", "other"};
  return *kCategories;
}

Corpus LoadCorpus(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path manifest = fs::path(dir) / "manifest";
  std::ifstream in(manifest);
  if (!in) throw Error("cannot read " + manifest.string());
  Corpus corpus;
  corpus.root = dir;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string rel, expected, tag;
    if (!(fields >> rel)) continue;
    auto where = manifest.string() + ":" + std::to_string(lineno) + ": ";
    if (!(fields >> expected) ||
        (expected != "verifiable" && expected != "unverifiable")) {
      throw Error(where + "expected verifiable or unverifiable");
    }
    CorpusEntry e;
    e.expected_verifiable = expected == "verifiable";
    while (fields >> tag) {
      if (tag != "hard") throw Error(where + "unknown tag " + tag);
      e.hard = true;
    }
    fs::path p(rel);
    if (p.extension() != ".imp" || !p.has_parent_path()) {
      throw Error(where + "entries look like <category>/<name>.imp");
    }
    e.category = p.parent_path().string();
    const auto& cats = CorpusCategories();
    if (std::find(cats.begin(), cats.end(), e.category) == cats.end()) {
      throw Error(where + "unknown category " + e.category);
    }
    e.id = e.category + "/" + p.stem().string();
    e.path = (fs::path(dir) / p).string();
    try {
      e.program = ParseProgramFile(e.path);
    } catch (const Error& err) {
      throw Error(e.path + ": " + err.what());
    }
    for (const auto& other : corpus.entries) {
      if (other.id == e.id) throw Error(where + "duplicate entry " + e.id);
    }
    corpus.entries.push_back(std::move(e));
  }
  if (corpus.entries.empty()) throw Error(manifest.string() + " lists nothing");
  return corpus;
}

const char* MethodName(Method m) {
  switch (m) {
    case Method::kAdhoc: return "adhoc";
    case Method::kNeuroInvStar: return "neuroinv-star";
    case Method::kNeuroInv: return "neuroinv";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  for (Method m : {Method::kAdhoc, Method::kNeuroInvStar, Method::kNeuroInv}) {
    if (name == MethodName(m)) return m;
  }
  throw Error("unknown method " + name +
              " (expected adhoc, neuroinv-star or neuroinv)");
}

const char* FailureStageName(FailureStage s) {
  switch (s) {
    case FailureStage::kNone: return "none";
    case FailureStage::kRefinement: return "refinement";
    case FailureStage::kRepair: return "repair";
  }
  return "?";
}

}  // namespace invgen
