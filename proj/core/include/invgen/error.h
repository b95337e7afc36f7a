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

// Exception hierarchy shared by every invgen module.

#ifndef INVGEN_ERROR_H_
#define INVGEN_ERROR_H_

#include <stdexcept>
#include <string>

namespace invgen {

struct SourceLoc {
  int line = 0;
  int column = 0;

  std::string ToString() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed source text. Carries the position of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(SourceLoc loc, const std::string& message)
      : Error(loc.ToString() + ": syntax error: " + message), loc_(loc) {}
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

// Sort mismatch, undeclared identifier, or duplicate declaration.
class TypeError : public Error {
 public:
  explicit TypeError(const std::string& message, std::string identifier = "")
      : Error("type error: " + message), identifier_(std::move(identifier)) {}
  const std::string& identifier() const { return identifier_; }

 private:
  std::string identifier_;
};

// Formula evaluation failure (unbound variable, out-of-bounds read, ...).
class EvalError : public Error {
 public:
  enum class Kind { kUnbound, kOutOfBounds, kDivByZero, kOverflow, kUnsupported };
  EvalError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class NestedLoopError : public Error {
 public:
  NestedLoopError(int loop_id, const std::string& message)
      : Error(message), loop_id_(loop_id) {}
  int loop_id() const { return loop_id_; }

 private:
  int loop_id_;
};

class LoopEncounteredError : public Error {
 public:
  using Error::Error;
};

// The solver process could not be started.
class SolverLaunchError : public Error {
 public:
  using Error::Error;
};

// The solver replied with something we could not understand.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A loop has no invariant where one is required.
class MissingInvariant : public Error {
 public:
  MissingInvariant(int loop_id, const std::string& message)
      : Error(message), loop_id_(loop_id) {}
  int loop_id() const { return loop_id_; }

 private:
  int loop_id_;
};

// The template space holds no candidate for the loop.
class GeneratorExhausted : public Error {
 public:
  using Error::Error;
};

// No candidate distinct from the failed one is available.
class RefinementStuck : public Error {
 public:
  using Error::Error;
};

// A prompt template placeholder has no binding.
class MissingBinding : public Error {
 public:
  explicit MissingBinding(const std::string& placeholder)
      : Error("missing prompt binding: {" + placeholder + "}"),
        placeholder_(placeholder) {}
  const std::string& placeholder() const { return placeholder_; }

 private:
  std::string placeholder_;
};

// Network or HTTP failure talking to the completion endpoint.
class TransportError : public Error {
 public:
  TransportError(const std::string& message, bool transient)
      : Error(message), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

class AuthError : public Error {
 public:
  using Error::Error;
};

// A model reply without a usable formula or program.
class MalformedReply : public Error {
 public:
  using Error::Error;
};

}  // namespace invgen

#endif  // INVGEN_ERROR_H_
