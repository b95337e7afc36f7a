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

// Checked 64-bit integer arithmetic with SMT-LIB (Euclidean) division.

#ifndef INVGEN_ARITH_H_
#define INVGEN_ARITH_H_

#include <cstdint>
#include <limits>

#include "invgen/error.h"

namespace invgen {

[[noreturn]] inline void ThrowOverflow() {
  throw EvalError(EvalError::Kind::kOverflow, "integer overflow");
}

inline int64_t CheckedAdd(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) ThrowOverflow();
  return r;
}

inline int64_t CheckedSub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) ThrowOverflow();
  return r;
}

inline int64_t CheckedMul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) ThrowOverflow();
  return r;
}

inline int64_t CheckedNeg(int64_t a) {
  if (a == std::numeric_limits<int64_t>::min()) ThrowOverflow();
  return -a;
}

// Quotient q with a == b*q + r and 0 <= r < |b|.
inline int64_t EuclidDiv(int64_t a, int64_t b) {
  if (b == 0) throw EvalError(EvalError::Kind::kDivByZero, "division by zero");
  if (a == std::numeric_limits<int64_t>::min() && b == -1) ThrowOverflow();
  int64_t q = a / b;
  int64_t r = a % b;
  if (r < 0) q = b > 0 ? q - 1 : q + 1;
  return q;
}

inline int64_t EuclidMod(int64_t a, int64_t b) {
  if (b == 0) throw EvalError(EvalError::Kind::kDivByZero, "division by zero");
  if (b == -1) return 0;
  int64_t r = a % b;
  if (r < 0) r += b > 0 ? b : -b;
  return r;
}

}  // namespace invgen

#endif  // INVGEN_ARITH_H_
