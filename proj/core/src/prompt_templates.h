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

#ifndef INVGEN_SRC_PROMPT_TEMPLATES_H_
#define INVGEN_SRC_PROMPT_TEMPLATES_H_

namespace invgen::internal {

extern const char* const kAdhocTemplate;
extern const char* const kWpTemplate;
extern const char* const kGenTemplate;
extern const char* const kImp1Template;
extern const char* const kImp2Template;
extern const char* const kRefineTemplate;
extern const char* const kJmlTemplate;
extern const char* const kRepairTemplate;

extern const char* const kImp1Guidance;
extern const char* const kImp2Guidance;

}  // namespace invgen::internal

#endif  // INVGEN_SRC_PROMPT_TEMPLATES_H_
