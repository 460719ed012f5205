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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ampdiff/assert_amp.h"
#include "ampdiff/detect.h"
#include "ampdiff/interpreter.h"
#include "ampdiff/parser.h"
#include "ampdiff/pipeline.h"
#include "ampdiff/render.h"
#include "ampdiff/report.h"
#include "gtest/gtest.h"
#include "json_schema.h"
#include "test_util.h"

namespace ampdiff {

void PrintTo(const Evidence& e, std::ostream* os) {
  *os << "{" << e.kind << ", " << e.position << ", " << e.expected << ", "
      << e.actual << "}";
}

namespace {

using testing::ParseP;
using testing::ParseT;

AmplifiedTest Wrap(const TestDecl& t) { return {t, {}, t.name}; }

TEST(DetectTest, RenderingChange) {
  Program pre_p = ParseP("fn show(s) {\n    return \"<\" + s + \">\";\n}\n");
  Program post_p = ParseP("fn show(s) {\n    return \"[\" + s + \"]\";\n}\n");
  Interpreter pre(pre_p);
  Interpreter post(post_p);
  std::vector<AmplifiedTest> amp =
      AmplifyAssertions(pre, ParseT("test s { let v = show(\"x\"); }"));
  ASSERT_EQ(1u, amp.size());
  std::vector<Detector> found = Detect(pre, post, amp);
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ("s_amp", found[0].name());
  EXPECT_EQ((Evidence{"assertion", "s_amp.slt:3:5", "\"<x>\"", "\"[x]\""}),
            found[0].evidence);
  EXPECT_GT(found[0].steps_pre, 0u);
  EXPECT_GT(found[0].steps_post, 0u);
}

TEST(DetectTest, IdenticalProgramsEmpty) {
  Program p = ParseP("fn f(a) {\n    return a * 2;\n}\n");
  Interpreter pre(p);
  Interpreter post(p);
  std::vector<AmplifiedTest> amp =
      AmplifyAssertions(pre, ParseT("test t { let v = f(4); f(null); }"));
  ASSERT_EQ(1u, amp.size());
  EXPECT_TRUE(Detect(pre, post, amp).empty());
}

TEST(DetectTest, ExpectFailKindMismatch) {
  Program pre_p = ParseP("fn g() {\n    throw \"E\", null;\n}\n");
  Program post_p = ParseP("fn g() {\n    throw \"F\", \"m\";\n}\n");
  Interpreter pre(pre_p);
  Interpreter post(post_p);
  TestDecl t = ParseT("test t { expect_fail(\"E\", \"null\") { g(); } }");
  std::vector<Detector> found = Detect(pre, post, {Wrap(t)});
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ("expect_fail", found[0].evidence.kind);
  EXPECT_EQ("E: \"null\"", found[0].evidence.expected);
  EXPECT_EQ("F: \"m\"", found[0].evidence.actual);
}

TEST(DetectTest, ExpectFailNoError) {
  Program pre_p = ParseP("fn g() {\n    throw \"E\", \"m\";\n}\n");
  Program post_p = ParseP("fn g() {\n    return 1;\n}\n");
  Interpreter pre(pre_p);
  Interpreter post(post_p);
  TestDecl t = ParseT("test t { expect_fail(\"E\", \"m\") { g(); } }");
  std::vector<Detector> found = Detect(pre, post, {Wrap(t)});
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ("no error", found[0].evidence.actual);
}

TEST(DetectTest, ErrorEvidence) {
  Program pre_p = ParseP("fn g(a) {\n    return a;\n}\n");
  Program post_p = ParseP("fn g(a) {\n    return a / 0;\n}\n");
  Interpreter pre(pre_p);
  Interpreter post(post_p);
  std::vector<Detector> found =
      Detect(pre, post, {Wrap(ParseT("test t { g(1); }"))});
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ((Evidence{"error", "m.sl:2:12", "pass", "DivByZero: null"}),
            found[0].evidence);
}

TEST(DetectTest, TimeoutAsymmetry) {
  Program ends = ParseP("fn g() {\n    return 1;\n}\n");
  Program loops = ParseP("fn g() {\n    while true {\n    }\n}\n");
  Interpreter a(ends);
  Interpreter b(loops);
  std::vector<AmplifiedTest> t = {Wrap(ParseT("test t { g(); }"))};
  std::vector<Detector> found = Detect(a, b, t, 500);
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ("Timeout: null", found[0].evidence.actual);
  // A test that does not terminate on pre is never a detector.
  EXPECT_TRUE(Detect(b, a, t, 500).empty());
  EXPECT_TRUE(Detect(b, b, t, 500).empty());
}

TEST(DetectTest, PreFailingInputSkipped) {
  Program p = ParseP("fn g() {\n    return 1;\n}\n");
  Interpreter pre(p);
  std::vector<AmplifiedTest> t = {
      Wrap(ParseT("test t { assert_eq(2, g()); }"))};
  EXPECT_TRUE(Detect(pre, pre, t).empty());
}

TEST(DetectTest, EvidenceReproducible) {
  CommitPair pair = LoadCommitPair(testing::CorpusDir() / "string-escape");
  Interpreter pre(pair.pre.program);
  Interpreter post(pair.post.program);
  std::vector<AmplifiedTest> amp;
  for (const TestDecl& seed : pair.pre.suite.tests) {
    for (AmplifiedTest& a : AmplifyAssertions(pre, seed)) amp.push_back(a);
  }
  SearchResult r =
      Sbampl(pre, post, pair.pre.suite.tests, pair.pre.suite, SearchConfig{});
  amp.insert(amp.end(), r.variants.begin(), r.variants.end());
  std::vector<Detector> found = Detect(pre, post, amp);
  ASSERT_FALSE(found.empty());
  for (const Detector& d : found) {
    EXPECT_EQ(d.evidence, EvidenceOf(post.Execute(d.amplified.test)));
    // Parsing the emitted source gives the same evidence.
    TestSuite reparsed =
        ParseTests(Render(d.amplified.test), d.name() + ".slt");
    EXPECT_EQ(d.evidence, EvidenceOf(post.Execute(reparsed.tests[0])));
  }
  EXPECT_EQ(found.size(), StabilityFilter(pre, post, found).size());
}

// Test double whose verdicts are scripted per call.
class ScriptedExecutor {
 public:
  // Each entry: true for pass, false for a failure with `evidence_tag`.
  void Script(Side side, std::vector<std::pair<bool, std::string>> runs) {
    script_[side] = std::move(runs);
  }

  Executor AsExecutor() {
    return [this](Side side, const TestDecl&) {
      std::size_t& i = next_[side];
      const auto& [pass, tag] = script_[side].at(i % script_[side].size());
      ++i;
      TestOutcome o;
      if (pass) {
        o.status = Status::kPass;
      } else {
        o.status = Status::kAssertionFailure;
        o.failure.expected = "1";
        o.failure.actual = tag;
      }
      o.steps_used = 7;
      return o;
    };
  }

  std::size_t calls(Side side) { return next_[side]; }

 private:
  std::map<Side, std::vector<std::pair<bool, std::string>>> script_;
  std::map<Side, std::size_t> next_;
};

TEST(StabilityFilterTest, DeterministicIsIdentity) {
  ScriptedExecutor exec;
  exec.Script(Side::kPre, {{true, ""}});
  exec.Script(Side::kPost, {{false, "2"}});
  std::vector<AmplifiedTest> t = {Wrap(ParseT("test t { }"))};
  std::vector<Detector> found = Detect(t, exec.AsExecutor());
  ASSERT_EQ(1u, found.size());
  EXPECT_EQ(1u, StabilityFilter(found, exec.AsExecutor()).size());
  EXPECT_EQ(1u + kStabilityRuns, exec.calls(Side::kPre));
  EXPECT_EQ(1u + kStabilityRuns, exec.calls(Side::kPost));
}

TEST(StabilityFilterTest, FlippingPostDiscarded) {
  ScriptedExecutor exec;
  exec.Script(Side::kPre, {{true, ""}});
  exec.Script(Side::kPost, {{false, "2"}, {false, "2"}, {true, ""}});
  std::vector<Detector> found =
      Detect({Wrap(ParseT("test t { }"))}, exec.AsExecutor());
  ASSERT_EQ(1u, found.size());
  EXPECT_TRUE(StabilityFilter(found, exec.AsExecutor()).empty());
}

TEST(StabilityFilterTest, FlippingPreDiscarded) {
  ScriptedExecutor exec;
  exec.Script(Side::kPre, {{true, ""}, {true, ""}, {false, "x"}});
  exec.Script(Side::kPost, {{false, "2"}});
  std::vector<Detector> found =
      Detect({Wrap(ParseT("test t { }"))}, exec.AsExecutor());
  ASSERT_EQ(1u, found.size());
  EXPECT_TRUE(StabilityFilter(found, exec.AsExecutor()).empty());
}

TEST(StabilityFilterTest, VaryingEvidenceDiscarded) {
  ScriptedExecutor exec;
  exec.Script(Side::kPre, {{true, ""}});
  exec.Script(Side::kPost, {{false, "2"}, {false, "3"}});
  std::vector<Detector> found =
      Detect({Wrap(ParseT("test t { }"))}, exec.AsExecutor());
  ASSERT_EQ(1u, found.size());
  EXPECT_TRUE(StabilityFilter(found, exec.AsExecutor()).empty());
}

TEST(StabilityFilterTest, EmptyInput) {
  ScriptedExecutor exec;
  EXPECT_TRUE(StabilityFilter({}, exec.AsExecutor()).empty());
}

Detector MakeDetector(const std::string& name, const std::string& origin) {
  Detector d;
  d.amplified.test.name = name;
  d.amplified.origin = origin;
  d.amplified.lineage.push_back({"str_null", "0/1", "\"a\"", "null"});
  d.evidence = {"assertion", name + ".slt:2:5", "1", "2"};
  d.steps_pre = 10;
  d.steps_post = 12;
  return d;
}

DetectionReport SampleReport() {
  DetectionReport r;
  r.case_id = "demo";
  r.mode = "sbampl";
  r.diff_coverage = "0.7500";
  r.selected = {"a", "b"};
  r.amplified = 9;
  r.detectors = {MakeDetector("b_str_null2", "b"),
                 MakeDetector("a_str_null9", "a"),
                 MakeDetector("a_str_null1", "a")};
  r.per_mode = {{"sbampl", 9, 3}};
  r.timing = {12.5, {{"select", 1.0}, {"sbampl", 11.5}}};
  return r;
}

TEST(ReportTest, SortsByOriginThenName) {
  DetectionReport r = SampleReport();
  SortDetectors(r.detectors);
  std::vector<std::string> names;
  for (const Detector& d : r.detectors) names.push_back(d.name());
  EXPECT_EQ(
      (std::vector<std::string>{"a_str_null1", "a_str_null9", "b_str_null2"}),
      names);
}

TEST(ReportTest, JsonShape) {
  nlohmann::ordered_json j = ToJson(SampleReport());
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(
      (std::vector<std::string>{"case", "mode", "config", "diff_coverage",
                                "selected", "counts", "detectors", "timing"}),
      keys);
  EXPECT_EQ(2, j["counts"]["selected"]);
  EXPECT_EQ(9, j["counts"]["amplified"]);
  EXPECT_EQ(3, j["counts"]["detectors"]);
  EXPECT_FALSE(j["counts"].contains("per_mode"));
  EXPECT_EQ(50, j["config"]["max_variants"]);
  EXPECT_EQ("null", j["detectors"][0]["lineage"][0]["new"]);
  EXPECT_EQ("0.7500", j["diff_coverage"]);
}

TEST(ReportTest, ZeroDetectors) {
  DetectionReport r;
  r.case_id = "z";
  r.mode = "aampl";
  r.selected = {"a", "b", "c"};
  r.amplified = 3;
  nlohmann::ordered_json j = ToJson(r);
  EXPECT_EQ(nlohmann::ordered_json(
                {{"selected", 3}, {"amplified", 3}, {"detectors", 0}}),
            j["counts"]);
  EXPECT_EQ("-", DetectionCell(0));
  EXPECT_EQ("yes(3)", DetectionCell(3));
}

TEST(ReportTest, BothModesAndUnboundedBudget) {
  DetectionReport r = SampleReport();
  r.mode = "both";
  r.config.max_variants = kUnboundedVariants;
  r.per_mode = {{"aampl", 2, 0}, {"sbampl", 9, 3}};
  nlohmann::ordered_json j = ToJson(r);
  EXPECT_TRUE(j["config"]["max_variants"].is_null());
  EXPECT_EQ(0, j["counts"]["per_mode"]["aampl"]["detectors"]);
  EXPECT_EQ(3, j["counts"]["per_mode"]["sbampl"]["detectors"]);
}

TEST(ReportTest, TimingExcludedFromDeterministicPart) {
  DetectionReport a = SampleReport();
  DetectionReport b = SampleReport();
  b.timing.total_ms = 99;
  EXPECT_NE(SerializeReport(a), SerializeReport(b));
  EXPECT_EQ(DeterministicPart(a), DeterministicPart(b));
  EXPECT_EQ('\n', SerializeReport(a).back());
  EXPECT_EQ(std::string::npos, DeterministicPart(a).find("timing"));
}

TEST(ReportTest, Markdown) {
  DetectionReport both = SampleReport();
  both.mode = "both";
  both.per_mode = {{"aampl", 2, 0}, {"sbampl", 9, 3}};
  both.timing.phases = {{"aampl", 0.4}, {"sbampl", 1234.6}};
  DetectionReport only = SampleReport();
  only.case_id = "other";
  only.selected = {};
  only.per_mode = {{"sbampl", 0, 0}};
  only.timing.phases = {{"sbampl", 2}};
  EXPECT_EQ(
      "| id | Cov | #Selected | AAMPL | Time | SBAMPL | Time |\n"
      "|---|---|---|---|---|---|---|\n"
      "| demo | 0.7500 | 2 | - | 0 ms | yes(3) | 1235 ms |\n"
      "| other | 0.7500 | 0 | n/a | n/a | - | 2 ms |\n",
      RenderMarkdown({both, only}));
}

TEST(SchemaValidatorTest, RejectsBrokenReports) {
  testing::SchemaValidator v = testing::SchemaValidator::FromFile(
      testing::DocsDir() / "report.schema.json");
  nlohmann::json good = nlohmann::json::parse(SerializeReport(SampleReport()));
  EXPECT_TRUE(v.Validate(good).empty());

  nlohmann::json missing = good;
  missing.erase("selected");
  EXPECT_FALSE(v.Validate(missing).empty());
  nlohmann::json coverage = good;
  coverage["diff_coverage"] = "0.75";
  EXPECT_FALSE(v.Validate(coverage).empty());
  nlohmann::json op = good;
  op["detectors"][0]["lineage"][0]["op"] = "num_double";
  EXPECT_FALSE(v.Validate(op).empty());
  nlohmann::json extra = good;
  extra["counts"]["other"] = 1;
  EXPECT_FALSE(v.Validate(extra).empty());
  nlohmann::json type = good;
  type["config"]["seed"] = "0";
  EXPECT_FALSE(v.Validate(type).empty());
}

TEST(SchemaValidatorTest, CorpusReportsConform) {
  testing::SchemaValidator v = testing::SchemaValidator::FromFile(
      testing::DocsDir() / "report.schema.json");
  for (const auto& dir : CorpusCases(testing::CorpusDir())) {
    RunConfig config;
    config.pre = dir / "pre";
    config.post = dir / "post";
    config.case_id = dir.filename().string();
    config.search.max_variants = 10;
    PipelineResult r = RunPipeline(config);
    std::vector<std::string> errors =
        v.Validate(nlohmann::json::parse(SerializeReport(r.report)));
    EXPECT_TRUE(errors.empty()) << config.case_id << ": " << errors.front();
    // Counts agree with the lists.
    EXPECT_EQ(r.report.per_mode.size(), 2u);
    std::size_t amplified = 0;
    std::size_t detectors = 0;
    for (const ModeCounts& c : r.report.per_mode) {
      amplified += c.amplified;
      detectors += c.detectors;
    }
    EXPECT_EQ(r.report.amplified, amplified);
    EXPECT_EQ(r.report.detectors.size(), detectors);
  }
}

}  // namespace
}  // namespace ampdiff
