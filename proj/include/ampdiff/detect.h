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

#ifndef AMPDIFF_DETECT_H_
#define AMPDIFF_DETECT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ampdiff/assert_amp.h"
#include "ampdiff/interpreter.h"

namespace ampdiff {

inline constexpr int kStabilityRuns = 3;

struct Evidence {
  std::string kind;  // "assertion", "expect_fail" or "error"
  std::string position;
  std::string expected;
  std::string actual;

  bool operator==(const Evidence&) const = default;
};

struct Detector {
  AmplifiedTest amplified;
  Evidence evidence;
  std::uint64_t steps_pre = 0;
  std::uint64_t steps_post = 0;

  const std::string& name() const { return amplified.name(); }
};

// Evidence for a failing outcome. Must not be called on a pass.
Evidence EvidenceOf(const TestOutcome& outcome);

enum class Side { kPre, kPost };

// Runs one test on one version. The default binds two interpreters; tests
// substitute doubles.
using Executor = std::function<TestOutcome(Side, const TestDecl&)>;

Executor InterpreterExecutor(const Interpreter& pre, const Interpreter& post,
                             Fuel fuel);

// Tests that pass on pre and fail on post. A post timeout counts only when
// pre did not time out.
std::vector<Detector> Detect(const std::vector<AmplifiedTest>& amplified,
                             const Executor& run);

std::vector<Detector> Detect(const Interpreter& pre, const Interpreter& post,
                             const std::vector<AmplifiedTest>& amplified,
                             Fuel fuel = kDefaultFuel);

// Keeps a detector iff kStabilityRuns runs on pre all pass and as many runs
// on post all fail with the detector's evidence.
std::vector<Detector> StabilityFilter(const std::vector<Detector>& detectors,
                                      const Executor& run);

std::vector<Detector> StabilityFilter(const Interpreter& pre,
                                      const Interpreter& post,
                                      const std::vector<Detector>& detectors,
                                      Fuel fuel = kDefaultFuel);

}  // namespace ampdiff

#endif  // AMPDIFF_DETECT_H_
