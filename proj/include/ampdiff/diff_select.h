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

#ifndef AMPDIFF_DIFF_SELECT_H_
#define AMPDIFF_DIFF_SELECT_H_

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ampdiff/ast.h"
#include "ampdiff/commit_pair.h"
#include "ampdiff/interpreter.h"

namespace ampdiff {

// A maximal run of non-matching lines between two matched ones. Line
// numbers are 1-based; `anchor` is the last matched pre line before the
// hunk, or 0 when the hunk starts the file.
struct Hunk {
  std::vector<int> deleted;
  std::vector<int> added;
  int anchor = 0;

  bool pure_insertion() const { return deleted.empty(); }
};

struct FileDiff {
  std::set<int> deleted;  // pre line numbers
  std::set<int> added;    // post line numbers
  std::vector<Hunk> hunks;

  bool empty() const { return hunks.empty(); }
  std::size_t edit_count() const { return deleted.size() + added.size(); }
};

// Minimal line edit script via longest common subsequence.
FileDiff DiffLines(const std::vector<std::string>& pre,
                   const std::vector<std::string>& post);

std::vector<std::string> SplitLines(std::string_view text);

struct LineDiff {
  std::map<std::string, FileDiff> programs;  // changed program files only
  std::set<std::string> added_tests;
  std::set<std::string> modified_tests;
  std::set<std::string> removed_tests;

  bool empty() const {
    return programs.empty() && added_tests.empty() && modified_tests.empty() &&
           removed_tests.empty();
  }
};

// Program files are diffed line by line; a file on one side only counts as
// fully added or deleted. Tests are compared per name by rendered body.
LineDiff ComputeLineDiff(const Version& pre, const Version& post);

class EmptyDiff : public std::runtime_error {
 public:
  EmptyDiff() : std::runtime_error("the commit changes no program statement") {}
};

struct TargetSet {
  std::set<LineRef> lines;  // pre-version statement lines touched
  std::size_t total_changed = 0;
};

// Deleted pre lines plus the anchors of pure insertions, restricted to
// lines where a statement of `pre` starts. Throws EmptyDiff if nothing
// remains.
TargetSet TargetLines(const LineDiff& diff, const Program& pre);

// Lines on which some statement of the program starts.
std::set<LineRef> StatementLines(const Program& program);

struct DiffCoverage {
  std::size_t covered = 0;
  std::size_t total = 0;

  double ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(covered) / total;
  }
  // Exact ratio rounded half-up to 4 decimals, e.g. "0.7500".
  std::string ToString() const;
};

// Share of the targets executed by at least one test. Throws EmptyDiff
// when there are no targets.
DiffCoverage ComputeDiffCoverage(const std::map<std::string, Coverage>& suite,
                                 const TargetSet& targets);

// Tests whose pre-version coverage touches a target, in suite order.
// Tests that do not pass on pre and tests added by the commit are skipped.
std::vector<TestDecl> SelectTests(const TestSuite& pre_suite,
                                  const SuiteOutcomes& pre_outcomes,
                                  const TargetSet& targets,
                                  const LineDiff& diff);

}  // namespace ampdiff

#endif  // AMPDIFF_DIFF_SELECT_H_
