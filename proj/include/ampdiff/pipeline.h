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

#ifndef AMPDIFF_PIPELINE_H_
#define AMPDIFF_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampdiff/commit_pair.h"
#include "ampdiff/diff_select.h"
#include "ampdiff/interpreter.h"
#include "ampdiff/report.h"
#include "ampdiff/search_amp.h"

namespace ampdiff {

enum ExitCode : int {
  kExitDetected = 0,
  kExitUsage = 2,
  kExitNoDetector = 3,
  kExitNotApplicable = 4,
};

struct RunConfig {
  std::filesystem::path pre;
  std::filesystem::path post;
  std::string case_id;
  std::string mode = "both";  // "aampl", "sbampl" or "both"
  SearchConfig search;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Throws ConfigError for an unknown mode or an out-of-range number.
void ValidateConfig(const RunConfig& config);

// The modes a mode string stands for, in execution order.
std::vector<std::string> ModesOf(const std::string& mode);

// Both versions, loaded and ready to execute.
class Workspace {
 public:
  explicit Workspace(CommitPair pair);
  static Workspace Load(const RunConfig& config);

  const CommitPair& pair() const { return pair_; }
  const Interpreter& pre() const { return pre_; }
  const Interpreter& post() const { return post_; }

 private:
  CommitPair pair_;
  Interpreter pre_;
  Interpreter post_;
};

struct LineCoverage {
  LineRef line;
  std::vector<std::string> covered_by;
};

struct Selection {
  bool empty_diff = false;
  DiffCoverage coverage;
  std::vector<LineCoverage> lines;  // changed statement lines in order
  std::vector<TestDecl> selected;   // suite order

  std::string diff_coverage() const {
    return empty_diff ? "0.0000" : coverage.ToString();
  }
  std::vector<std::string> selected_names() const;
};

Selection Select(const Workspace& ws, Fuel fuel);

struct StagedTest {
  AmplifiedTest amplified;
  std::string mode;
};

struct Amplification {
  std::vector<StagedTest> tests;
  std::vector<ModeCounts> per_mode;  // amplified counts
  Timing timing;
};

Amplification AmplifyStage(const Workspace& ws, const Selection& selection,
                           const RunConfig& config);

// Runs detection and the stability filter and assembles the report.
DetectionReport DetectStage(const Workspace& ws, const Selection& selection,
                            const RunConfig& config, const Amplification& amp);

int ExitCodeFor(const DetectionReport& report);

struct PipelineResult {
  DetectionReport report;
  int exit_code = kExitNoDetector;
};

// select, amplify, detect, stability filter, report.
PipelineResult RunPipeline(const RunConfig& config);

// Stage artifacts: <dir>/tests/<name>.slt and <dir>/amplified.json.
void WriteStage(const std::filesystem::path& dir, const RunConfig& config,
                const Amplification& amp);

class MissingStage : public std::runtime_error {
 public:
  explicit MissingStage(const std::string& what) : std::runtime_error(what) {}
};

// Reads what WriteStage wrote. Mode and search settings recorded in
// amplified.json replace those in `config`. Sources without metadata are
// attributed to the last mode of `config`. Throws MissingStage if there is
// no tests directory.
Amplification ReadStage(const std::filesystem::path& dir, RunConfig& config);

// Writes each detector's test source to <dir>/<name>.slt.
void EmitTests(const std::filesystem::path& dir,
               const std::vector<Detector>& detectors);

// Expectations of a corpus case, from its manifest.json.
struct ModeExpectation {
  int exit_code = kExitNoDetector;
  std::vector<std::string> operators;  // some detector uses one of these
  bool fail_assert = false;            // some detector is a _failAssert variant
};

struct Manifest {
  std::string id;
  std::string description;
  std::optional<std::string> diff_coverage;
  std::map<std::string, ModeExpectation> expect;
};

Manifest LoadManifest(const std::filesystem::path& case_dir);

struct CaseCheck {
  std::string case_id;
  std::string mode;
  bool passed = false;
  std::string detail;
};

// Case directories of a corpus, sorted by name.
std::vector<std::filesystem::path> CorpusCases(
    const std::filesystem::path& corpus_dir);

std::vector<CaseCheck> CheckCase(const std::filesystem::path& case_dir,
                                 const SearchConfig& search,
                                 std::vector<DetectionReport>* reports);

}  // namespace ampdiff

#endif  // AMPDIFF_PIPELINE_H_
