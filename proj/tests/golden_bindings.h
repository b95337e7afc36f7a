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

#ifndef INVGEN_TESTS_GOLDEN_BINDINGS_H_
#define INVGEN_TESTS_GOLDEN_BINDINGS_H_

#include "invgen/generate.h"
#include "invgen/prompts.h"

namespace invgen::testing {

// Values the golden prompt files were rendered with.
inline PromptBindings GoldenBindings() {
  return {
      {"program", "method m(int x) requires x > 0 ensures x > 1 {\n  x = x + 1;\n}"},
      {"invariants", "loop 1: 0 <= i && i <= n"},
      {"segmented_program",
       "method sum(int n) {\n  // segment 1 open\n  int i = 0;\n  // segment 1 close\n"
       "  // while 1 open\n  while (i < n) {\n    i = i + 1;\n  }\n  // while 1 close\n}"},
      {"segment_index", "1"},
      {"tag_description", "(between tags `// segment 1 open` and `// segment 1 close`)"},
      {"postcondition", "0 <= i && i <= n"},
      {"loop_index", "1"},
      {"loop_postcondition", "i == n"},
      {"loop_invariant", "i <= n"},
      {"loop_guard", "i < n"},
      {"wp_loop_body", "i + 1 <= n"},
      {"current_invariant", "i <= n"},
      {"implication_name", "Implication 2"},
      {"failure_reason", "counterexample: {i: -1, n: 0}"},
      {"refinement_guidance", RefinementGuidance(Obligation::kImplication2)},
      {"method_name", "sum"},
      {"openjml_output", "sum.imp:5: LoopInvariantBeforeLoop: 0 <= i"},
  };
}

}  // namespace invgen::testing

#endif  // INVGEN_TESTS_GOLDEN_BINDINGS_H_
