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

#ifndef AMPDIFF_RENDER_H_
#define AMPDIFF_RENDER_H_

#include <string>
#include <string_view>
#include <vector>

#include "ampdiff/ast.h"

namespace ampdiff {

// Canonical source text: 4-space indentation, one statement per line, a
// blank line between top-level declarations. Parsing the output yields a
// structurally equal AST.
std::string Render(const Program& program);
std::string Render(const TestSuite& suite);
std::string Render(const TestDecl& test);
std::string Render(const Stmt& stmt, int indent = 0);
std::string Render(const Expr& expr);

// Renders only the statements of a body, used to compare tests by content
// irrespective of their names.
std::string RenderBody(const std::vector<Stmt>& body);

// Double-quoted string literal with the language's escapes applied.
std::string QuoteString(std::string_view s);

}  // namespace ampdiff

#endif  // AMPDIFF_RENDER_H_
