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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "ampdiff/parser.h"
#include "ampdiff/render.h"

namespace ampdiff {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
}

ordered_json LineageJson(const std::vector<TransformRecord>& lineage) {
  ordered_json out = ordered_json::array();
  for (const TransformRecord& r : lineage) {
    out.push_back({{"op", r.op},
                   {"site", r.site},
                   {"old", r.old_value},
                   {"new", r.new_value}});
  }
  return out;
}

std::vector<TransformRecord> LineageFromJson(const ordered_json& j) {
  std::vector<TransformRecord> out;
  for (const ordered_json& r : j) {
    out.push_back(
        {r.at("op").get<std::string>(), r.at("site").get<std::string>(),
         r.at("old").get<std::string>(), r.at("new").get<std::string>()});
  }
  return out;
}

std::size_t CountMode(const std::vector<StagedTest>& tests,
                      const std::string& mode) {
  return static_cast<std::size_t>(
      std::count_if(tests.begin(), tests.end(),
                    [&](const StagedTest& t) { return t.mode == mode; }));
}

}  // namespace

std::vector<std::string> ModesOf(const std::string& mode) {
  if (mode == "both") return {"aampl", "sbampl"};
  return {mode};
}

void ValidateConfig(const RunConfig& config) {
  if (config.mode != "aampl" && config.mode != "sbampl" &&
      config.mode != "both") {
    throw ConfigError("unknown mode '" + config.mode + "'");
  }
  if (config.search.iterations < 1 || config.search.iterations > 100) {
    throw ConfigError("iterations must be within 1..100");
  }
  if (config.search.max_variants < 1) {
    throw ConfigError("max-variants must be positive");
  }
  if (config.search.fuel < 1) throw ConfigError("fuel must be positive");
  for (const fs::path& dir : {config.pre, config.post}) {
    if (!fs::is_directory(dir)) {
      throw ConfigError("'" + dir.string() + "' is not a directory");
    }
  }
}

Workspace::Workspace(CommitPair pair)
    : pair_(std::move(pair)),
      pre_(pair_.pre.program),
      post_(pair_.post.program) {}

Workspace Workspace::Load(const RunConfig& config) {
  return Workspace(
      CommitPair{LoadVersion(config.pre), LoadVersion(config.post)});
}

std::vector<std::string> Selection::selected_names() const {
  std::vector<std::string> out;
  for (const TestDecl& t : selected) out.push_back(t.name);
  return out;
}

Selection Select(const Workspace& ws, Fuel fuel) {
  Selection out;
  const Version& pre = ws.pair().pre;
  LineDiff diff = ComputeLineDiff(pre, ws.pair().post);
  TargetSet targets;
  try {
    targets = TargetLines(diff, pre.program);
  } catch (const EmptyDiff&) {
    out.empty_diff = true;
    return out;
  }
  SuiteOutcomes outcomes = RunSuite(pre.program, pre.suite, fuel);
  std::map<std::string, Coverage> coverage = CoverageMap(outcomes);
  out.coverage = ComputeDiffCoverage(coverage, targets);
  for (const LineRef& line : targets.lines) {
    LineCoverage lc{line, {}};
    for (const auto& [name, outcome] : outcomes) {
      if (outcome.coverage.count(line) > 0) lc.covered_by.push_back(name);
    }
    out.lines.push_back(std::move(lc));
  }
  out.selected = SelectTests(pre.suite, outcomes, targets, diff);
  return out;
}

Amplification AmplifyStage(const Workspace& ws, const Selection& selection,
                           const RunConfig& config) {
  Amplification out;
  for (const std::string& mode : ModesOf(config.mode)) {
    Stopwatch watch;
    std::vector<AmplifiedTest> produced;
    if (mode == "aampl") {
      for (const TestDecl& seed : selection.selected) {
        for (AmplifiedTest& a :
             AmplifyAssertions(ws.pre(), seed, config.search.fuel)) {
          produced.push_back(std::move(a));
        }
      }
    } else {
      produced = Sbampl(ws.pre(), ws.post(), selection.selected,
                        ws.pair().pre.suite, config.search)
                     .variants;
    }
    out.per_mode.push_back({mode, produced.size(), 0});
    for (AmplifiedTest& a : produced) out.tests.push_back({std::move(a), mode});
    out.timing.phases.emplace_back(mode, watch.ms());
  }
  return out;
}

DetectionReport DetectStage(const Workspace& ws, const Selection& selection,
                            const RunConfig& config, const Amplification& amp) {
  DetectionReport report;
  report.case_id = config.case_id;
  report.mode = config.mode;
  report.config = config.search;
  report.diff_coverage = selection.diff_coverage();
  report.selected = selection.selected_names();
  report.amplified = amp.tests.size();
  report.timing = amp.timing;

  Stopwatch detect_watch;
  double stability_ms = 0;
  for (const std::string& mode : ModesOf(config.mode)) {
    std::vector<AmplifiedTest> tests;
    for (const StagedTest& t : amp.tests) {
      if (t.mode == mode) tests.push_back(t.amplified);
    }
    std::vector<Detector> found =
        Detect(ws.pre(), ws.post(), tests, config.search.fuel);
    Stopwatch stability_watch;
    std::vector<Detector> stable =
        StabilityFilter(ws.pre(), ws.post(), found, config.search.fuel);
    stability_ms += stability_watch.ms();
    report.per_mode.push_back({mode, tests.size(), stable.size()});
    for (Detector& d : stable) report.detectors.push_back(std::move(d));
  }
  SortDetectors(report.detectors);
  report.timing.phases.emplace_back("detect", detect_watch.ms() - stability_ms);
  report.timing.phases.emplace_back("stability", stability_ms);
  return report;
}

int ExitCodeFor(const DetectionReport& report) {
  if (report.selected.empty()) return kExitNotApplicable;
  return report.detectors.empty() ? kExitNoDetector : kExitDetected;
}

PipelineResult RunPipeline(const RunConfig& config) {
  ValidateConfig(config);
  Stopwatch total;
  Workspace ws = Workspace::Load(config);
  Stopwatch select_watch;
  Selection selection = Select(ws, config.search.fuel);
  double select_ms = select_watch.ms();
  Amplification amp = AmplifyStage(ws, selection, config);
  amp.timing.phases.insert(amp.timing.phases.begin(), {"select", select_ms});
  PipelineResult result;
  result.report = DetectStage(ws, selection, config, amp);
  result.report.timing.total_ms = total.ms();
  result.exit_code = ExitCodeFor(result.report);
  return result;
}

void WriteStage(const fs::path& dir, const RunConfig& config,
                const Amplification& amp) {
  fs::create_directories(dir / "tests");
  ordered_json tests = ordered_json::array();
  for (const StagedTest& t : amp.tests) {
    std::string file = "tests/" + t.amplified.name() + ".slt";
    WriteText(dir / file, Render(t.amplified.test));
    tests.push_back({{"name", t.amplified.name()},
                     {"mode", t.mode},
                     {"origin", t.amplified.origin},
                     {"file", file},
                     {"lineage", LineageJson(t.amplified.lineage)}});
  }
  ordered_json phases = ordered_json::object();
  for (const auto& [name, ms] : amp.timing.phases) phases[name] = ms;
  ordered_json meta = {
      {"case", config.case_id},
      {"mode", config.mode},
      {"config",
       {{"iterations", config.search.iterations},
        {"seed", config.search.seed},
        {"max_variants", config.search.max_variants == kUnboundedVariants
                             ? ordered_json(nullptr)
                             : ordered_json(config.search.max_variants)},
        {"fuel", config.search.fuel}}},
      {"tests", std::move(tests)},
      {"timing", {{"phases", std::move(phases)}}}};
  WriteText(dir / "amplified.json", meta.dump(2) + "\n");
}

Amplification ReadStage(const fs::path& dir, RunConfig& config) {
  if (!fs::is_directory(dir / "tests")) {
    throw MissingStage("no amplified tests under '" + dir.string() + "'");
  }
  Amplification out;
  std::set<std::string> listed;
  fs::path meta_path = dir / "amplified.json";
  if (fs::exists(meta_path)) {
    ordered_json meta;
    try {
      meta = ordered_json::parse(ReadFile(meta_path));
      config.mode = meta.at("mode").get<std::string>();
      const ordered_json& c = meta.at("config");
      config.search.iterations = c.at("iterations").get<int>();
      config.search.seed = c.at("seed").get<std::uint64_t>();
      config.search.max_variants =
          c.at("max_variants").is_null()
              ? kUnboundedVariants
              : c.at("max_variants").get<std::size_t>();
      config.search.fuel = c.at("fuel").get<Fuel>();
      if (config.case_id.empty()) config.case_id = meta.at("case");
      for (const auto& [name, ms] : meta.at("timing").at("phases").items()) {
        out.timing.phases.emplace_back(name, ms.get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw MissingStage("malformed '" + meta_path.string() + "': " + e.what());
    }
    for (const ordered_json& t : meta.at("tests")) {
      std::string name = t.at("name").get<std::string>();
      fs::path file = dir / t.at("file").get<std::string>();
      if (!fs::exists(file)) {
        throw MissingStage("missing '" + file.string() + "'");
      }
      TestSuite suite = ParseTests(ReadFile(file), name + ".slt");
      StagedTest staged;
      staged.amplified.test = std::move(suite.tests.front());
      staged.amplified.origin = t.at("origin").get<std::string>();
      staged.amplified.lineage = LineageFromJson(t.at("lineage"));
      staged.mode = t.at("mode").get<std::string>();
      listed.insert(
          fs::path(t.at("file").get<std::string>()).filename().string());
      out.tests.push_back(std::move(staged));
    }
  }
  // Sources without metadata are still run.
  std::vector<fs::path> extra;
  for (const fs::directory_entry& e : fs::directory_iterator(dir / "tests")) {
    if (e.path().extension() == ".slt" &&
        listed.count(e.path().filename().string()) == 0) {
      extra.push_back(e.path());
    }
  }
  std::sort(extra.begin(), extra.end());
  for (const fs::path& file : extra) {
    TestSuite suite = ParseTests(ReadFile(file), file.filename().string());
    for (TestDecl& t : suite.tests) {
      StagedTest staged;
      staged.amplified.origin = BaseName(t.name);
      staged.amplified.test = std::move(t);
      staged.mode = ModesOf(config.mode).back();
      out.tests.push_back(std::move(staged));
    }
  }
  for (const std::string& mode : ModesOf(config.mode)) {
    out.per_mode.push_back({mode, CountMode(out.tests, mode), 0});
  }
  return out;
}

void EmitTests(const fs::path& dir, const std::vector<Detector>& detectors) {
  fs::create_directories(dir);
  for (const Detector& d : detectors) {
    WriteText(dir / (d.name() + ".slt"), Render(d.amplified.test));
  }
}

Manifest LoadManifest(const fs::path& case_dir) {
  Manifest m;
  m.id = case_dir.filename().string();
  fs::path path = case_dir / "manifest.json";
  if (!fs::exists(path)) return m;
  try {
    nlohmann::json j = nlohmann::json::parse(ReadFile(path));
    m.id = j.value("id", m.id);
    m.description = j.value("description", "");
    if (j.contains("diff_coverage")) {
      m.diff_coverage = j["diff_coverage"].get<std::string>();
    }
    nlohmann::json expect = j.value("expect", nlohmann::json::object());
    for (const auto& [mode, e] : expect.items()) {
      ModeExpectation x;
      x.exit_code = e.at("exit").get<int>();
      x.operators = e.value("operators", std::vector<std::string>{});
      x.fail_assert = e.value("fail_assert", false);
      m.expect[mode] = std::move(x);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed '" + path.string() + "': " + e.what());
  }
  return m;
}

std::vector<fs::path> CorpusCases(const fs::path& corpus_dir) {
  std::vector<fs::path> out;
  for (const fs::directory_entry& e : fs::directory_iterator(corpus_dir)) {
    if (e.is_directory() && fs::is_directory(e.path() / "pre")) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CaseCheck> CheckCase(const fs::path& case_dir,
                                 const SearchConfig& search,
                                 std::vector<DetectionReport>* reports) {
  Manifest manifest = LoadManifest(case_dir);
  std::vector<CaseCheck> out;
  DetectionReport merged;
  merged.case_id = manifest.id;
  merged.mode = "both";
  merged.config = search;
  for (const auto& [mode, expect] : manifest.expect) {
    RunConfig config;
    config.pre = case_dir / "pre";
    config.post = case_dir / "post";
    config.case_id = manifest.id;
    config.mode = mode;
    config.search = search;
    PipelineResult r = RunPipeline(config);

    CaseCheck check{manifest.id, mode, true, ""};
    auto fail = [&check](const std::string& why) {
      check.passed = false;
      check.detail += (check.detail.empty() ? "" : "; ") + why;
    };
    if (r.exit_code != expect.exit_code) {
      fail("exit " + std::to_string(r.exit_code) + ", expected " +
           std::to_string(expect.exit_code));
    }
    if (manifest.diff_coverage &&
        r.report.diff_coverage != *manifest.diff_coverage) {
      fail("diff coverage " + r.report.diff_coverage + ", expected " +
           *manifest.diff_coverage);
    }
    if (!expect.operators.empty()) {
      bool found = std::any_of(
          r.report.detectors.begin(), r.report.detectors.end(),
          [&](const Detector& d) {
            return std::any_of(
                d.amplified.lineage.begin(), d.amplified.lineage.end(),
                [&](const TransformRecord& t) {
                  return std::find(expect.operators.begin(),
                                   expect.operators.end(),
                                   t.op) != expect.operators.end();
                });
          });
      if (!found) fail("no detector uses an expected operator");
    }
    if (expect.fail_assert &&
        std::none_of(r.report.detectors.begin(), r.report.detectors.end(),
                     [](const Detector& d) {
                       return d.name().ends_with(kFailAssertSuffix);
                     })) {
      fail("no _failAssert detector");
    }
    if (check.passed) {
      check.detail = std::to_string(r.report.detectors.size()) + " detector(s)";
    }
    out.push_back(std::move(check));

    merged.diff_coverage = r.report.diff_coverage;
    merged.selected = r.report.selected;
    merged.amplified += r.report.amplified;
    for (const ModeCounts& c : r.report.per_mode) merged.per_mode.push_back(c);
    for (const auto& p : r.report.timing.phases) {
      if (p.first == mode) merged.timing.phases.push_back(p);
    }
    merged.timing.total_ms += r.report.timing.total_ms;
    for (Detector& d : r.report.detectors)
      merged.detectors.push_back(std::move(d));
  }
  SortDetectors(merged.detectors);
  if (reports != nullptr) reports->push_back(std::move(merged));
  return out;
}

}  // namespace ampdiff
