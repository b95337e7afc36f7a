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

#include <map>
#include <vector>

#include "invgen/error.h"
#include "invgen/logic.h"
#include "invgen/solver.h"

namespace invgen {
namespace {

constexpr double kMaxStates = 1e7;

// One odometer digit ranges over every value of a single variable.
struct Digit {
  std::string name;
  Sort sort;
  int64_t count = 0;  // number of values
  int64_t pos = 0;
};

// Array values of length 0..bound in ascending order: shorter first, then
// lexicographic over elements in [-bound, bound].
ArrayValue ArrayAt(int64_t pos, int bound) {
  int64_t width = 2 * bound + 1;
  int64_t block = 1;
  for (int len = 0; len <= bound; ++len) {
    if (pos < block) {
      ArrayValue arr;
      arr.elems.assign(static_cast<size_t>(len), -bound);
      for (int i = len - 1; i >= 0; --i) {
        arr.elems[static_cast<size_t>(i)] = -bound + pos % width;
        pos /= width;
      }
      return arr;
    }
    pos -= block;
    block *= width;
  }
  return {};
}

}  // namespace

CheckVerdict BoundedCheck(const Formula& antecedent, const Formula& consequent,
                          int bound) {
  if (bound < 0) throw Error("bound must be non-negative");
  std::map<std::string, Sort> vars;
  for (const Formula& f : {antecedent, consequent}) {
    for (const auto& [name, sort] : FreeVarsSorted(f)) {
      auto [it, inserted] = vars.emplace(name, sort);
      if (!inserted && it->second != sort) {
        throw TypeError("variable " + name + " used at two sorts", name);
      }
    }
  }
  const int64_t width = 2 * static_cast<int64_t>(bound) + 1;
  std::vector<Digit> digits;
  double total = 1;
  for (const auto& [name, sort] : vars) {
    Digit d{name, sort, 0, 0};
    if (sort == Sort::kArray) {
      double arrays = 0;
      double block = 1;
      for (int len = 0; len <= bound; ++len) {
        arrays += block;
        block *= static_cast<double>(width);
      }
      if (arrays > kMaxStates) throw Error("bounded state space exceeds 10^7");
      d.count = static_cast<int64_t>(arrays);
    } else {
      d.count = width;
    }
    total *= static_cast<double>(d.count);
    if (total > kMaxStates) throw Error("bounded state space exceeds 10^7");
    digits.push_back(d);
  }

  State s;
  auto load = [&](const Digit& d) {
    if (d.sort == Sort::kArray) {
      s.vars[d.name] = ArrayAt(d.pos, bound);
    } else {
      s.vars[d.name] = -static_cast<int64_t>(bound) + d.pos;
    }
  };
  for (const auto& d : digits) load(d);

  while (true) {
    try {
      if (EvalFormula(antecedent, s) && !EvalFormula(consequent, s)) {
        return CheckVerdict::Invalid(s);
      }
    } catch (const EvalError&) {
      // Not evaluable here; outside the checked domain.
    }
    // Advance: the last digit is least significant.
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0) {
      Digit& d = digits[static_cast<size_t>(i)];
      if (++d.pos < d.count) {
        load(d);
        break;
      }
      d.pos = 0;
      load(d);
      --i;
    }
    if (i < 0) return CheckVerdict::Valid(true);
  }
}

ImplicationChecker SolverChecker(std::shared_ptr<Solver> solver) {
  return [solver](const Formula& a, const Formula& c) {
    return solver->CheckImplication(a, c);
  };
}

ImplicationChecker BoundedChecker(int bound) {
  return [bound](const Formula& a, const Formula& c) {
    return BoundedCheck(a, c, bound);
  };
}

}  // namespace invgen
