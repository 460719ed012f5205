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

// Command-line entry point.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ampdiff/pipeline.h"
#include "ampdiff/render.h"

namespace {

namespace fs = std::filesystem;
using namespace ampdiff;

struct Options {
  RunConfig run;
  std::size_t max_variants = 50;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool md = false;
  bool json = false;
  std::string emit_tests;
  std::string stage;
  std::string corpus;
};

void AddInputs(CLI::App* cmd, Options& o) {
  cmd->add_option("--pre", o.run.pre, "pre-commit version directory")
      ->required();
  cmd->add_option("--post", o.run.post, "post-commit version directory")
      ->required();
  cmd->add_option("--case-id", o.run.case_id,
                  "case name (default: parent directory of --pre)");
  cmd->add_option("--fuel", o.run.search.fuel, "step budget per execution");
}

void AddSearch(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.run.mode, "aampl, sbampl or both");
  cmd->add_option("--iterations", o.run.search.iterations,
                  "search iterations (1..100)");
  cmd->add_option("--seed", o.seed, "search seed (default $AMPDIFF_SEED or 0)");
  cmd->add_option("--max-variants", o.max_variants,
                  "variants per seed test and iteration; 0 for no limit");
}

void AddOutputs(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "report file (default: standard output)");
  cmd->add_flag("--md", o.md, "also write a markdown table");
  cmd->add_option("--emit-tests", o.emit_tests,
                  "write detector sources to this directory");
}

void WriteOrPrint(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError("cannot write '" + path + "'");
}

void Finish(Options& o) {
  if (o.run.case_id.empty()) {
    fs::path pre = fs::absolute(o.run.pre).lexically_normal();
    if (!pre.has_filename()) pre = pre.parent_path();
    o.run.case_id = pre.parent_path().filename().string();
  }
  o.run.search.max_variants =
      o.max_variants == 0 ? kUnboundedVariants : o.max_variants;
  if (o.seed) {
    o.run.search.seed = *o.seed;
  } else if (const char* env = std::getenv("AMPDIFF_SEED")) {
    try {
      std::size_t used = 0;
      o.run.search.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::logic_error&) {
      throw ConfigError("AMPDIFF_SEED is not an unsigned integer");
    }
  }
  ValidateConfig(o.run);
}

void WriteReport(const Options& o, const DetectionReport& report) {
  WriteOrPrint(o.out, SerializeReport(report));
  if (o.md) {
    std::string md = RenderMarkdown({report});
    WriteOrPrint(
        o.out.empty() ? "" : fs::path(o.out).replace_extension(".md").string(),
        md);
  }
  if (!o.emit_tests.empty()) EmitTests(o.emit_tests, report.detectors);
}

int CmdRun(Options& o) {
  Finish(o);
  PipelineResult r = RunPipeline(o.run);
  WriteReport(o, r.report);
  return r.exit_code;
}

int CmdCoverage(Options& o) {
  Finish(o);
  Workspace ws = Workspace::Load(o.run);
  Selection s = Select(ws, o.run.search.fuel);
  if (o.json) {
    nlohmann::ordered_json lines = nlohmann::ordered_json::array();
    for (const LineCoverage& l : s.lines) {
      lines.push_back({{"file", l.line.file},
                       {"line", l.line.line},
                       {"covered_by", l.covered_by}});
    }
    nlohmann::ordered_json j = {{"diff_coverage", s.diff_coverage()},
                                {"covered", s.coverage.covered},
                                {"total", s.coverage.total},
                                {"lines", lines},
                                {"selected", s.selected_names()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "diff coverage: " << s.diff_coverage() << " ("
              << s.coverage.covered << "/" << s.coverage.total << ")\n";
    for (const LineCoverage& l : s.lines) {
      std::cout << "  " << l.line.file << ":" << l.line.line;
      if (l.covered_by.empty()) {
        std::cout << " not covered\n";
      } else {
        std::cout << " covered by";
        for (const std::string& t : l.covered_by) std::cout << " " << t;
        std::cout << "\n";
      }
    }
    std::cout << "selected:";
    for (const std::string& t : s.selected_names()) std::cout << " " << t;
    std::cout << "\n";
  }
  if (s.empty_diff) {
    std::cerr << "ampdiff: the commit changes no program statement\n";
    return kExitNotApplicable;
  }
  return s.selected.empty() ? kExitNotApplicable : kExitDetected;
}

int CmdAmplify(Options& o) {
  Finish(o);
  Workspace ws = Workspace::Load(o.run);
  Selection s = Select(ws, o.run.search.fuel);
  Amplification amp = AmplifyStage(ws, s, o.run);
  WriteStage(o.stage, o.run, amp);
  std::cout << amp.tests.size() << " amplified test(s) written to " << o.stage
            << "\n";
  return s.selected.empty() ? kExitNotApplicable : kExitDetected;
}

int CmdDetect(Options& o) {
  Finish(o);
  Workspace ws = Workspace::Load(o.run);
  Amplification amp = ReadStage(o.stage, o.run);
  ValidateConfig(o.run);
  Selection s = Select(ws, o.run.search.fuel);
  DetectionReport report = DetectStage(ws, s, o.run, amp);
  for (const auto& p : report.timing.phases) report.timing.total_ms += p.second;
  WriteReport(o, report);
  return ExitCodeFor(report);
}

int CmdCorpus(Options& o) {
  o.run.search.max_variants =
      o.max_variants == 0 ? kUnboundedVariants : o.max_variants;
  if (o.seed) o.run.search.seed = *o.seed;
  std::vector<DetectionReport> reports;
  bool all = true;
  for (const fs::path& dir : CorpusCases(o.corpus)) {
    for (const CaseCheck& c : CheckCase(dir, o.run.search, &reports)) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.case_id << " [" << c.mode
                << "] " << c.detail << "\n";
      all = all && c.passed;
    }
  }
  if (o.md) std::cout << "\n" << RenderMarkdown(reports);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Detects behavioral changes between two program versions by "
      "amplifying the tests that cover the diff."};
  app.require_subcommand(1);
  Options o;

  CLI::App* run = app.add_subcommand("run", "select, amplify, detect, report");
  AddInputs(run, o);
  AddSearch(run, o);
  AddOutputs(run, o);

  CLI::App* coverage =
      app.add_subcommand("coverage", "diff coverage and covering tests");
  AddInputs(coverage, o);
  coverage->add_flag("--json", o.json, "machine-readable output");

  CLI::App* amplify = app.add_subcommand(
      "amplify", "write amplified tests to a stage directory");
  AddInputs(amplify, o);
  AddSearch(amplify, o);
  amplify->add_option("--stage", o.stage, "stage directory")->required();

  CLI::App* detect =
      app.add_subcommand("detect", "run staged amplified tests on post");
  AddInputs(detect, o);
  AddOutputs(detect, o);
  detect->add_option("--stage", o.stage, "stage directory")->required();

  CLI::App* corpus =
      app.add_subcommand("corpus", "check every case of a fixture corpus");
  corpus->add_option("dir", o.corpus, "corpus directory")->required();
  AddSearch(corpus, o);
  corpus->add_option("--fuel", o.run.search.fuel, "step budget per execution");
  corpus->add_flag("--md", o.md, "print a markdown table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return CmdRun(o);
    if (*coverage) return CmdCoverage(o);
    if (*amplify) return CmdAmplify(o);
    if (*detect) return CmdDetect(o);
    return CmdCorpus(o);
  } catch (const std::exception& e) {
    std::cerr << "ampdiff: " << e.what() << "\n";
    return kExitUsage;
  }
}
