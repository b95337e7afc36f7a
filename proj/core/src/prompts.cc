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

#include "invgen/prompts.h"

#include <cctype>
#include <set>
#include <utility>

#include "invgen/error.h"
#include "prompt_templates.h"

namespace invgen {
namespace {

const std::map<std::string, std::string>& Templates() {
  static const auto* const kTemplates = new std::map<std::string, std::string>{
      {"adhoc", internal::kAdhocTemplate},
      {"wp", internal::kWpTemplate},
      {"gen", internal::kGenTemplate},
      {"imp1", internal::kImp1Template},
      {"imp2", internal::kImp2Template},
      {"refine", internal::kRefineTemplate},
      {"jml", internal::kJmlTemplate},
      {"repair", internal::kRepairTemplate},
  };
  return *kTemplates;
}

bool IsNameChar(char c) {
  return std::islower(static_cast<unsigned char>(c)) || c == '_';
}

// Calls visit(begin, end, name) for each {name} occurrence.
template <typename F>
void ScanPlaceholders(const std::string& text, F visit) {
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < text.size() && IsNameChar(text[j])) ++j;
    if (j > i + 1 && j < text.size() && text[j] == '}') {
      visit(i, j + 1, text.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      ++i;
    }
  }
}

}  // namespace

const std::vector<std::string>& PromptIds() {
  static const auto* const kIds = new std::vector<std::string>{
      "adhoc", "wp", "gen", "imp1", "imp2", "refine", "jml", "repair"};
  return *kIds;
}

const std::string& PromptTemplate(const std::string& id) {
  auto it = Templates().find(id);
  if (it == Templates().end()) throw Error("unknown prompt template: " + id);
  return it->second;
}

std::vector<std::string> PromptPlaceholders(const std::string& id) {
  std::set<std::string> names;
  ScanPlaceholders(PromptTemplate(id),
                   [&](size_t, size_t, std::string name) {
                     names.insert(std::move(name));
                   });
  return {names.begin(), names.end()};
}

std::string RenderPrompt(const std::string& id,
                         const PromptBindings& bindings) {
  const std::string& text = PromptTemplate(id);
  for (const auto& name : PromptPlaceholders(id)) {
    if (!bindings.count(name)) throw MissingBinding(name);
  }
  std::string out;
  size_t last = 0;
  ScanPlaceholders(text, [&](size_t begin, size_t end, const std::string& name) {
    out.append(text, last, begin - last);
    out += bindings.at(name);
    last = end;
  });
  out.append(text, last, std::string::npos);
  return out;
}

const std::string& RefinementGuidance(Obligation failed) {
  static const auto* const kImp1 = new std::string(internal::kImp1Guidance);
  static const auto* const kImp2 = new std::string(internal::kImp2Guidance);
  return failed == Obligation::kImplication2 ? *kImp2 : *kImp1;
}

}  // namespace invgen
