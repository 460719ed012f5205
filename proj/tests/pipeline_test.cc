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

#include "ampdiff/pipeline.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ampdiff/report.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ampdiff {
namespace {

namespace fs = std::filesystem;

RunConfig CaseConfig(const std::string& id, const std::string& mode = "both") {
  RunConfig c;
  c.pre = testing::CorpusDir() / id / "pre";
  c.post = testing::CorpusDir() / id / "post";
  c.case_id = id;
  c.mode = mode;
  return c;
}

fs::path TempDir(const std::string& name) {
  fs::path dir =
      fs::temp_directory_path() /
      ("ampdiff_pipeline_" + name + "_" +
       std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ValidateConfigTest, Ranges) {
  RunConfig ok = CaseConfig("equals-version");
  EXPECT_NO_THROW(ValidateConfig(ok));
  RunConfig c = ok;
  c.mode = "fast";
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = ok;
  c.search.iterations = 0;
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c.search.iterations = 101;
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c.search.iterations = 100;
  EXPECT_NO_THROW(ValidateConfig(c));
  c = ok;
  c.search.fuel = 0;
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = ok;
  c.search.max_variants = 0;
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = ok;
  c.pre = testing::CorpusDir() / "no-such-case" / "pre";
  EXPECT_THROW(ValidateConfig(c), ConfigError);
}

TEST(ValidateConfigTest, Modes) {
  EXPECT_EQ((std::vector<std::string>{"aampl", "sbampl"}), ModesOf("both"));
  EXPECT_EQ((std::vector<std::string>{"aampl"}), ModesOf("aampl"));
  EXPECT_EQ((std::vector<std::string>{"sbampl"}), ModesOf("sbampl"));
}

TEST(PipelineTest, ExitCodes) {
  EXPECT_EQ(kExitDetected,
            RunPipeline(CaseConfig("equals-version", "aampl")).exit_code);
  EXPECT_EQ(kExitNoDetector,
            RunPipeline(CaseConfig("refactor-only")).exit_code);
  PipelineResult uncovered = RunPipeline(CaseConfig("uncovered"));
  EXPECT_EQ(kExitNotApplicable, uncovered.exit_code);
  EXPECT_EQ("0.0000", uncovered.report.diff_coverage);
  EXPECT_TRUE(uncovered.report.selected.empty());
}

TEST(PipelineTest, EmptyDiffNotApplicable) {
  RunConfig c = CaseConfig("refactor-only");
  c.post = c.pre;
  PipelineResult r = RunPipeline(c);
  EXPECT_EQ(kExitNotApplicable, r.exit_code);
  EXPECT_EQ("0.0000", r.report.diff_coverage);
}

TEST(PipelineTest, SameSeedSameReport) {
  for (const char* id : {"string-escape", "bounded-read"}) {
    RunConfig c = CaseConfig(id);
    c.search.seed = 7;
    EXPECT_EQ(DeterministicPart(RunPipeline(c).report),
              DeterministicPart(RunPipeline(c).report));
  }
}

TEST(PipelineTest, TimingPhases) {
  PipelineResult r = RunPipeline(CaseConfig("string-escape"));
  std::vector<std::string> phases;
  for (const auto& [name, ms] : r.report.timing.phases) {
    phases.push_back(name);
    EXPECT_GE(ms, 0);
  }
  EXPECT_EQ((std::vector<std::string>{"select", "aampl", "sbampl", "detect",
                                      "stability"}),
            phases);
  EXPECT_GE(r.report.timing.total_ms, 0);
}

// amplify, write, read back, detect: the same report as a single run.
TEST(StageTest, CompositionEqualsRun) {
  for (const fs::path& dir : CorpusCases(testing::CorpusDir())) {
    for (const char* mode : {"aampl", "sbampl", "both"}) {
      SCOPED_TRACE(dir.filename().string() + " " + mode);
      RunConfig c = CaseConfig(dir.filename().string(), mode);
      c.search.max_variants = 10;
      PipelineResult direct = RunPipeline(c);

      fs::path stage = TempDir("compose");
      {
        Workspace ws = Workspace::Load(c);
        Selection s = Select(ws, c.search.fuel);
        WriteStage(stage, c, AmplifyStage(ws, s, c));
      }
      RunConfig later = CaseConfig(dir.filename().string(), "both");
      Amplification amp = ReadStage(stage, later);
      EXPECT_EQ(c.mode, later.mode);
      EXPECT_EQ(c.search.max_variants, later.search.max_variants);
      Workspace ws = Workspace::Load(later);
      Selection s = Select(ws, later.search.fuel);
      DetectionReport composed = DetectStage(ws, s, later, amp);
      EXPECT_EQ(DeterministicPart(direct.report), DeterministicPart(composed));
      EXPECT_EQ(direct.exit_code, ExitCodeFor(composed));
      fs::remove_all(stage);
    }
  }
}

TEST(StageTest, MissingTestsDirectory) {
  fs::path stage = TempDir("missing");
  RunConfig c = CaseConfig("equals-version");
  EXPECT_THROW(ReadStage(stage, c), MissingStage);
  fs::remove_all(stage);
}

TEST(StageTest, EmptyStageHasNoDetectors) {
  fs::path stage = TempDir("empty");
  fs::create_directories(stage / "tests");
  RunConfig c = CaseConfig("equals-version");
  Amplification amp = ReadStage(stage, c);
  EXPECT_TRUE(amp.tests.empty());
  Workspace ws = Workspace::Load(c);
  DetectionReport r = DetectStage(ws, Select(ws, c.search.fuel), c, amp);
  EXPECT_EQ(kExitNoDetector, ExitCodeFor(r));
  fs::remove_all(stage);
}

TEST(StageTest, HandWrittenSourceIsRead) {
  fs::path stage = TempDir("hand");
  fs::create_directories(stage / "tests");
  std::ofstream(stage / "tests" / "mine.slt")
      << "test mine {\n    let a = new Artifact(\"g\", \"a\", \"1\");\n"
         "    let b = new Artifact(\"g\", \"a\", \"2\");\n"
         "    assert_true(same_artifact(a, b));\n}\n";
  RunConfig c = CaseConfig("equals-version", "aampl");
  Amplification amp = ReadStage(stage, c);
  ASSERT_EQ(1u, amp.tests.size());
  EXPECT_EQ("mine", amp.tests[0].amplified.origin);
  EXPECT_EQ("aampl", amp.tests[0].mode);
  Workspace ws = Workspace::Load(c);
  DetectionReport r = DetectStage(ws, Select(ws, c.search.fuel), c, amp);
  ASSERT_EQ(1u, r.detectors.size());
  EXPECT_EQ("mine", r.detectors[0].name());
  fs::remove_all(stage);
}

TEST(EmitTestsTest, WritesParseableSources) {
  PipelineResult r = RunPipeline(CaseConfig("equals-version", "aampl"));
  ASSERT_FALSE(r.report.detectors.empty());
  fs::path dir = TempDir("emit");
  EmitTests(dir, r.report.detectors);
  CommitPair pair = LoadCommitPair(testing::CorpusDir() / "equals-version");
  Interpreter pre(pair.pre.program);
  Interpreter post(pair.post.program);
  for (const Detector& d : r.report.detectors) {
    fs::path file = dir / (d.name() + ".slt");
    ASSERT_TRUE(fs::exists(file));
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    TestSuite suite = ParseTests(text, file.filename().string());
    ASSERT_EQ(1u, suite.tests.size());
    EXPECT_TRUE(pre.Execute(suite.tests[0]).passed());
    EXPECT_EQ(d.evidence, EvidenceOf(post.Execute(suite.tests[0])));
  }
  fs::remove_all(dir);
}

TEST(CorpusTest, ManifestsHold) {
  std::vector<fs::path> cases = CorpusCases(testing::CorpusDir());
  EXPECT_GE(cases.size(), 7u);
  SearchConfig search;
  std::vector<DetectionReport> reports;
  for (const fs::path& dir : cases) {
    Manifest m = LoadManifest(dir);
    EXPECT_EQ(dir.filename().string(), m.id);
    EXPECT_FALSE(m.expect.empty());
    for (const CaseCheck& c : CheckCase(dir, search, &reports)) {
      EXPECT_TRUE(c.passed) << c.case_id << " [" << c.mode << "] " << c.detail;
    }
  }
  EXPECT_EQ(cases.size(), reports.size());
}

}  // namespace
}  // namespace ampdiff
