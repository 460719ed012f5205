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

#ifndef AMPDIFF_COMMIT_PAIR_H_
#define AMPDIFF_COMMIT_PAIR_H_

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "ampdiff/ast.h"

namespace ampdiff {

class UnreadableFile : public std::runtime_error {
 public:
  explicit UnreadableFile(const std::string& path)
      : std::runtime_error("cannot read '" + path + "'") {}
};

// Source text keyed by path relative to the version root, e.g.
// "src/m.sl" or "tests/m_test.slt".
using SourceFiles = std::map<std::string, std::string>;

// One side of a commit: raw sources plus the parsed program and suite.
struct Version {
  SourceFiles programs;
  SourceFiles tests;
  Program program;
  TestSuite suite;
};

// Parses in-memory sources. Throws ParseError or DuplicateName.
Version MakeVersion(SourceFiles programs, SourceFiles tests);

// Reads <dir>/src/*.sl and <dir>/tests/*.slt. Throws UnreadableFile,
// ParseError or DuplicateName.
Version LoadVersion(const std::filesystem::path& dir);

struct CommitPair {
  Version pre;
  Version post;
};

// Reads <case>/pre and <case>/post.
CommitPair LoadCommitPair(const std::filesystem::path& case_dir);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace ampdiff

#endif  // AMPDIFF_COMMIT_PAIR_H_
