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

// Prompt templates for the LLM-backed generator.

#ifndef INVGEN_PROMPTS_H_
#define INVGEN_PROMPTS_H_

#include <map>
#include <string>
#include <vector>

#include "invgen/generate.h"

namespace invgen {

using PromptBindings = std::map<std::string, std::string>;

// adhoc, wp, gen, imp1, imp2, refine, jml, repair.
const std::vector<std::string>& PromptIds();

// Raw template text. Throws Error for an unknown id.
const std::string& PromptTemplate(const std::string& id);

// Placeholder names of a template, sorted and deduplicated.
std::vector<std::string> PromptPlaceholders(const std::string& id);

// Replaces every {placeholder} of the template in a single pass; inserted
// text is not rescanned. Extra bindings are ignored. Throws MissingBinding.
std::string RenderPrompt(const std::string& id, const PromptBindings& bindings);

// Strategy text spliced into the refine prompt. Initialisation failures
// share the preservation text.
const std::string& RefinementGuidance(Obligation failed);

}  // namespace invgen

#endif  // INVGEN_PROMPTS_H_
