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

#include "ampdiff/detect.h"

namespace ampdiff {

Evidence EvidenceOf(const TestOutcome& outcome) {
  Evidence e;
  if (outcome.status == Status::kAssertionFailure) {
    e.kind = outcome.failure.from_expect_fail ? "expect_fail" : "assertion";
    e.position = ToString(outcome.failure.pos);
    e.expected = outcome.failure.expected;
    e.actual = outcome.failure.actual;
  } else {
    e.kind = "error";
    e.position = ToString(outcome.error.pos);
    e.expected = "pass";
    e.actual = outcome.error.Describe();
  }
  return e;
}

Executor InterpreterExecutor(const Interpreter& pre, const Interpreter& post,
                             Fuel fuel) {
  return [&pre, &post, fuel](Side side, const TestDecl& test) {
    return (side == Side::kPre ? pre : post).Execute(test, fuel);
  };
}

std::vector<Detector> Detect(const std::vector<AmplifiedTest>& amplified,
                             const Executor& run) {
  std::vector<Detector> out;
  for (const AmplifiedTest& a : amplified) {
    TestOutcome before = run(Side::kPre, a.test);
    if (!before.passed()) continue;
    TestOutcome after = run(Side::kPost, a.test);
    if (after.passed()) continue;
    out.push_back({a, EvidenceOf(after), before.steps_used, after.steps_used});
  }
  return out;
}

std::vector<Detector> Detect(const Interpreter& pre, const Interpreter& post,
                             const std::vector<AmplifiedTest>& amplified,
                             Fuel fuel) {
  return Detect(amplified, InterpreterExecutor(pre, post, fuel));
}

std::vector<Detector> StabilityFilter(const std::vector<Detector>& detectors,
                                      const Executor& run) {
  std::vector<Detector> out;
  for (const Detector& d : detectors) {
    bool stable = true;
    for (int i = 0; i < kStabilityRuns && stable; ++i) {
      stable = run(Side::kPre, d.amplified.test).passed();
    }
    for (int i = 0; i < kStabilityRuns && stable; ++i) {
      TestOutcome after = run(Side::kPost, d.amplified.test);
      stable = !after.passed() && EvidenceOf(after) == d.evidence;
    }
    if (stable) out.push_back(d);
  }
  return out;
}

std::vector<Detector> StabilityFilter(const Interpreter& pre,
                                      const Interpreter& post,
                                      const std::vector<Detector>& detectors,
                                      Fuel fuel) {
  return StabilityFilter(detectors, InterpreterExecutor(pre, post, fuel));
}

}  // namespace ampdiff
