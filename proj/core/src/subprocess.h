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

#ifndef INVGEN_SRC_SUBPROCESS_H_
#define INVGEN_SRC_SUBPROCESS_H_

#include <string>
#include <vector>

namespace invgen {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

// Runs argv[0] with `input` on stdin and collects both output streams.
// The child is killed once `timeout_ms` elapses. Throws SolverLaunchError if
// the executable cannot be started.
ProcessResult RunProcess(const std::vector<std::string>& argv,
                         const std::string& input, int timeout_ms);

bool IsExecutable(const std::string& path);
// First match of `name` on $PATH, or empty.
std::string FindOnPath(const std::string& name);

}  // namespace invgen

#endif  // INVGEN_SRC_SUBPROCESS_H_
