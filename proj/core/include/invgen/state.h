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

// Concrete program states.

#ifndef INVGEN_STATE_H_
#define INVGEN_STATE_H_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace invgen {

struct ArrayValue {
  std::vector<int64_t> elems;
  // Values at indices outside [0, length). Only solver models populate this;
  // reads there are defined for formula evaluation but the interpreter still
  // reports them as out of bounds.
  std::map<int64_t, int64_t> outside;

  int64_t length() const { return static_cast<int64_t>(elems.size()); }
  bool operator==(const ArrayValue& o) const {
    return elems == o.elems && outside == o.outside;
  }
};

using Value = std::variant<int64_t, ArrayValue>;

struct State {
  std::map<std::string, Value> vars;
  // Seeds the stream that resolves nondet() guards.
  uint64_t nondet_seed = 0;

  bool Has(const std::string& name) const { return vars.count(name) > 0; }
  int64_t Int(const std::string& name) const;
  const ArrayValue& Array(const std::string& name) const;
  void SetInt(const std::string& name, int64_t v) { vars[name] = v; }
  void SetArray(const std::string& name, std::vector<int64_t> elems) {
    vars[name] = ArrayValue{std::move(elems), {}};
  }
  // Restriction to the given names (missing names are skipped).
  State Restrict(const std::vector<std::string>& names) const;

  bool operator==(const State& o) const {
    return vars == o.vars && nondet_seed == o.nondet_seed;
  }
  // `{a: [1, 2], n: 3}`
  std::string ToString() const;
};

}  // namespace invgen

#endif  // INVGEN_STATE_H_
