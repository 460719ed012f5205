// Copyright 2026 The ampdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMPDIFF_INTERPRETER_H_
#define AMPDIFF_INTERPRETER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ampdiff/ast.h"
#include "ampdiff/value.h"

namespace ampdiff {

// Step budget. Every evaluated statement or expression node costs one step.
using Fuel = std::uint64_t;
inline constexpr Fuel kDefaultFuel = 1'000'000;

// Nested user-function calls beyond this depth end the run as a Timeout.
inline constexpr int kMaxCallDepth = 1000;

enum class ErrorKind {
  kDivByZero,
  kTypeError,
  kUndefinedName,
  kArityMismatch,
  kUserThrow,
  kTimeout,
};

const char* ToString(ErrorKind kind);

struct RuntimeError {
  ErrorKind kind = ErrorKind::kTypeError;
  std::string thrown_kind;             // the kind string of a `throw`
  std::optional<std::string> message;  // set only for kUserThrow
  SourcePos pos;

  // The kind as written in expect_fail: the thrown kind for user throws,
  // the built-in name otherwise.
  std::string KindText() const;
  // The message as a subject-language value (Str or Null).
  Value MessageValue() const;
  std::string Describe() const;

  bool operator==(const RuntimeError&) const = default;
};

struct LineRef {
  std::string file;
  int line = 0;

  auto operator<=>(const LineRef&) const = default;
};

using Coverage = std::set<LineRef>;

enum class Status { kPass, kAssertionFailure, kError };

const char* ToString(Status status);

struct AssertionFailure {
  SourcePos pos;
  std::string expected;
  std::string actual;
  bool from_expect_fail = false;

  bool operator==(const AssertionFailure&) const = default;
};

struct TestOutcome {
  Status status = Status::kPass;
  AssertionFailure failure;  // meaningful for kAssertionFailure
  RuntimeError error;        // meaningful for kError
  Coverage coverage;
  std::uint64_t steps_used = 0;

  bool passed() const { return status == Status::kPass; }
  bool timed_out() const {
    return status == Status::kError && error.kind == ErrorKind::kTimeout;
  }
};

// Compares everything except coverage.
bool SameResult(const TestOutcome& a, const TestOutcome& b);

struct Observation {
  std::size_t statement = 0;  // index in the test body
  Expr anchor;                // expression that reads the observed value
  ValueSnapshot snapshot;
};

struct ObservationLog {
  std::vector<Observation> entries;
  std::optional<RuntimeError> terminal;
  std::size_t terminal_statement = 0;  // meaningful when terminal is set
  // Set when an assertion left in the test failed; observation stops there.
  bool assertion_failed = false;
  std::uint64_t steps_used = 0;
};

// Executes tests against one program. Holds references into `program`,
// which must outlive the interpreter. Every run owns its own environment,
// so a const Interpreter may be shared between threads.
class Interpreter {
 public:
  explicit Interpreter(const Program& program);
  Interpreter(Program&&) = delete;
  ~Interpreter();
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  TestOutcome Execute(const TestDecl& test, Fuel fuel = kDefaultFuel) const;

  // Runs a test with observation points after every top-level let and
  // every top-level expression statement with a non-null result.
  ObservationLog ExecuteInstrumented(const TestDecl& stripped_test,
                                     Fuel fuel = kDefaultFuel) const;

  struct Index;

 private:
  std::unique_ptr<Index> index_;
};

TestOutcome ExecuteTest(const Program& program, const TestDecl& test,
                        Fuel fuel = kDefaultFuel);

ObservationLog ExecuteInstrumented(const Program& program,
                                   const TestDecl& stripped_test,
                                   Fuel fuel = kDefaultFuel);

using SuiteOutcomes = std::vector<std::pair<std::string, TestOutcome>>;

// Outcomes for every test, in suite order.
SuiteOutcomes RunSuite(const Program& program, const TestSuite& suite,
                       Fuel fuel = kDefaultFuel);

// Per-test coverage from a suite run.
std::map<std::string, Coverage> CoverageMap(const SuiteOutcomes& outcomes);

}  // namespace ampdiff

#endif  // AMPDIFF_INTERPRETER_H_
