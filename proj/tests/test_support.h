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

// Helpers shared by the unit and acceptance tests.

#ifndef INVGEN_TESTS_TEST_SUPPORT_H_
#define INVGEN_TESTS_TEST_SUPPORT_H_

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "invgen/parser.h"
#include "invgen/program.h"
#include "invgen/solver.h"

namespace invgen::testing {

inline std::string SourcePath(const std::string& rel) {
  return std::string(INVGEN_SOURCE_DIR) + "/" + rel;
}

inline std::string CorpusDir() { return SourcePath("corpus"); }

inline std::string CorpusFile(const std::string& id) {
  return CorpusDir() + "/" + id + ".imp";
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program LoadCorpusProgram(const std::string& id) {
  return ParseProgramFile(CorpusFile(id));
}

// Null when no SMT solver can be located.
inline std::shared_ptr<Solver> MaybeSolver() {
  try {
    ResolveSolverPath("");
  } catch (const SolverLaunchError&) {
    return nullptr;
  }
  SolverConfig cfg;
  cfg.timeout_ms = 10000;
  return std::make_shared<Solver>(cfg);
}

}  // namespace invgen::testing

#endif  // INVGEN_TESTS_TEST_SUPPORT_H_
