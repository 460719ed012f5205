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

#ifndef AMPDIFF_PARSER_H_
#define AMPDIFF_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "ampdiff/ast.h"

namespace ampdiff {

// Raised for malformed source. For grammar errors the position is the
// point just past the last token that was accepted; for lexical errors it
// is the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, int column, std::string expected);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::string file_;
  int line_;
  int column_;
  std::string expected_;
};

// Names of the built-in functions callable from subject programs. User
// declarations may not reuse them.
bool IsBuiltinFunction(std::string_view name);

// Parses one `.sl` source file. Throws ParseError or DuplicateName.
Program ParseProgram(std::string_view source, const std::string& file);

// Parses one `.slt` source file. Throws ParseError or DuplicateName.
TestSuite ParseTests(std::string_view source, const std::string& file);

}  // namespace ampdiff

#endif  // AMPDIFF_PARSER_H_
