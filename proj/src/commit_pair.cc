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

#include "ampdiff/commit_pair.h"

#include <fstream>
#include <sstream>

#include "ampdiff/parser.h"

namespace ampdiff {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw UnreadableFile(path.string());
  return ss.str();
}

namespace {

void ReadDir(const fs::path& root, const std::string& sub,
             const std::string& ext, SourceFiles& out) {
  fs::path dir = root / sub;
  std::error_code ec;
  if (!fs::exists(dir, ec)) return;
  if (!fs::is_directory(dir, ec)) throw UnreadableFile(dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ext) continue;
    out[sub + "/" + entry.path().filename().string()] = ReadFile(entry.path());
  }
}

}  // namespace

Version MakeVersion(SourceFiles programs, SourceFiles tests) {
  Version v;
  for (const auto& [name, text] : programs) {
    v.program.Merge(ParseProgram(text, name));
  }
  for (const auto& [name, text] : tests) {
    v.suite.Merge(ParseTests(text, name));
  }
  v.programs = std::move(programs);
  v.tests = std::move(tests);
  return v;
}

Version LoadVersion(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw UnreadableFile(dir.string());
  SourceFiles programs;
  SourceFiles tests;
  ReadDir(dir, "src", ".sl", programs);
  ReadDir(dir, "tests", ".slt", tests);
  return MakeVersion(std::move(programs), std::move(tests));
}

CommitPair LoadCommitPair(const fs::path& case_dir) {
  return {LoadVersion(case_dir / "pre"), LoadVersion(case_dir / "post")};
}

}  // namespace ampdiff
