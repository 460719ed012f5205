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

#ifndef AMPDIFF_LITERAL_SITES_H_
#define AMPDIFF_LITERAL_SITES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "ampdiff/ast.h"

namespace ampdiff {

// Child indices from a test's root down to one node. The first index
// selects a top-level statement; below a statement, indices run over
// exprs, then body, then else_body; below an expression, over children.
using NodePath = std::vector<std::size_t>;

std::string ToString(const NodePath& path);

enum class LiteralKind { kInt, kBool, kStr };

const char* ToString(LiteralKind kind);

struct LiteralSite {
  std::string test;
  NodePath path;
  LiteralKind kind = LiteralKind::kInt;
  Expr value;  // the literal node as found
};

// Every int, bool and string literal that feeds the test's inputs, in
// tree order (source order for parsed tests). Expected operands of
// assert_eq and expect_fail are not inputs and are skipped.
std::vector<LiteralSite> LiteralSites(const TestDecl& test);

// Path lookup. Returns nullptr when the path does not resolve to a node of
// the requested sort.
const Expr* FindExpr(const TestDecl& test, const NodePath& path);
Expr* FindExpr(TestDecl& test, const NodePath& path);
const Stmt* FindStmt(const TestDecl& test, const NodePath& path);

// The statement list holding the statement at `path`, plus its index
// there. Returns nullptr if the path does not name a statement.
std::vector<Stmt>* FindStmtList(TestDecl& test, const NodePath& path,
                                std::size_t* index);

}  // namespace ampdiff

#endif  // AMPDIFF_LITERAL_SITES_H_
