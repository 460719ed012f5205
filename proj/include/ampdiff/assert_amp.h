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

#ifndef AMPDIFF_ASSERT_AMP_H_
#define AMPDIFF_ASSERT_AMP_H_

#include <string>
#include <vector>

#include "ampdiff/ast.h"
#include "ampdiff/interpreter.h"

namespace ampdiff {

// One input transformation applied on the way from a seed to a test.
struct TransformRecord {
  std::string op;    // operator id
  std::string site;  // node path, "/"-separated
  std::string old_value;
  std::string new_value;

  bool operator==(const TransformRecord&) const = default;
};

struct AmplifiedTest {
  TestDecl test;  // test.name is the amplified test's name
  std::vector<TransformRecord> lineage;
  std::string origin;  // seed test name

  const std::string& name() const { return test.name; }
};

inline constexpr const char* kAmpSuffix = "_amp";
inline constexpr const char* kFailAssertSuffix = "_failAssert";

// Removes assertions. assert_eq(e, a) and assert_true/false/null(a) become
// `let _obsK = a;` so the checked value stays observable; expect_fail
// blocks are replaced by their statements. An assertion whose actual
// value only re-reads an earlier top-level let or expression statement
// (directly, through field access, or through str()) is dropped instead,
// since that statement is observed anyway.
TestDecl StripAssertions(const TestDecl& test);

// Assertions pinning the observed value to what the anchor produced.
std::vector<Stmt> GenerateAssertions(const Observation& obs);

// Amplifies one test against the pre-commit program: strip, observe,
// regenerate. Produces either a test with assertions inserted after each
// observed statement, or, when the stripped test raises, an expect_fail
// test truncated after the raising statement. Candidates that do not pass
// on `pre` are dropped, so the result holds zero or one test.
//
// The output is re-parsed from its canonical rendering under the file
// name "<name>.slt", so source positions match an emitted copy.
std::vector<AmplifiedTest> AmplifyAssertions(const Interpreter& pre,
                                             const AmplifiedTest& input,
                                             Fuel fuel = kDefaultFuel);

// Seed entry point: names the result "<seed>_amp" (or
// "<seed>_failAssert") with an empty lineage.
std::vector<AmplifiedTest> AmplifyAssertions(const Interpreter& pre,
                                             const TestDecl& seed,
                                             Fuel fuel = kDefaultFuel);

// Re-parses `test` from its rendering as "<name>.slt".
TestDecl Canonicalize(const TestDecl& test);

// Removes a trailing "_amp" or "_failAssert" from an amplified name.
std::string BaseName(const std::string& name);

}  // namespace ampdiff

#endif  // AMPDIFF_ASSERT_AMP_H_
