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

#include "ampdiff/literal_sites.h"

#include <type_traits>

namespace ampdiff {

std::string ToString(const NodePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '/';
    out += std::to_string(path[i]);
  }
  return out;
}

const char* ToString(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::kInt: return "int";
    case LiteralKind::kBool: return "bool";
    case LiteralKind::kStr: return "str";
  }
  return "?";
}

namespace {

void CollectExpr(const Expr& e, const std::string& test, NodePath& path,
                 std::vector<LiteralSite>& out) {
  if (e.kind == ExprKind::kIntLit || e.kind == ExprKind::kBoolLit ||
      e.kind == ExprKind::kStrLit) {
    LiteralKind kind = e.kind == ExprKind::kIntLit    ? LiteralKind::kInt
                       : e.kind == ExprKind::kBoolLit ? LiteralKind::kBool
                                                      : LiteralKind::kStr;
    out.push_back({test, path, kind, e});
    return;
  }
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    path.push_back(i);
    CollectExpr(e.children[i], test, path, out);
    path.pop_back();
  }
}

void CollectStmts(const std::vector<Stmt>& body, std::size_t offset,
                  const std::string& test, NodePath& path,
                  std::vector<LiteralSite>& out);

void CollectStmt(const Stmt& s, const std::string& test, NodePath& path,
                 std::vector<LiteralSite>& out) {
  bool skip_first =
      s.kind == StmtKind::kAssertEq || s.kind == StmtKind::kExpectFail;
  for (std::size_t i = skip_first ? 1 : 0; i < s.exprs.size(); ++i) {
    path.push_back(i);
    CollectExpr(s.exprs[i], test, path, out);
    path.pop_back();
  }
  CollectStmts(s.body, s.exprs.size(), test, path, out);
  CollectStmts(s.else_body, s.exprs.size() + s.body.size(), test, path, out);
}

void CollectStmts(const std::vector<Stmt>& body, std::size_t offset,
                  const std::string& test, NodePath& path,
                  std::vector<LiteralSite>& out) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    path.push_back(offset + i);
    CollectStmt(body[i], test, path, out);
    path.pop_back();
  }
}

// Walks `path`, stopping at the deepest statement reached. On return
// `consumed` is the number of indices used to reach that statement.
template <typename TestT, typename StmtT>
StmtT* WalkStmts(TestT& test, const NodePath& path, std::size_t& consumed) {
  if (path.empty() || path[0] >= test.body.size()) return nullptr;
  StmtT* s = &test.body[path[0]];
  consumed = 1;
  while (consumed < path.size()) {
    std::size_t i = path[consumed];
    if (i < s->exprs.size()) return s;
    i -= s->exprs.size();
    if (i < s->body.size()) {
      s = &s->body[i];
    } else if (i - s->body.size() < s->else_body.size()) {
      s = &s->else_body[i - s->body.size()];
    } else {
      return nullptr;
    }
    ++consumed;
  }
  return s;
}

template <typename TestT>
auto FindExprImpl(TestT& test, const NodePath& path)
    -> decltype(&test.body[0].exprs[0]) {
  using StmtT = std::remove_reference_t<decltype(test.body[0])>;
  std::size_t consumed = 0;
  StmtT* s = WalkStmts<TestT, StmtT>(test, path, consumed);
  if (s == nullptr || consumed >= path.size()) return nullptr;
  auto* e = &s->exprs[path[consumed]];
  for (std::size_t k = consumed + 1; k < path.size(); ++k) {
    if (path[k] >= e->children.size()) return nullptr;
    e = &e->children[path[k]];
  }
  return e;
}

}  // namespace

std::vector<LiteralSite> LiteralSites(const TestDecl& test) {
  std::vector<LiteralSite> out;
  NodePath path;
  CollectStmts(test.body, 0, test.name, path, out);
  return out;
}

const Expr* FindExpr(const TestDecl& test, const NodePath& path) {
  return FindExprImpl(test, path);
}

Expr* FindExpr(TestDecl& test, const NodePath& path) {
  return FindExprImpl(test, path);
}

const Stmt* FindStmt(const TestDecl& test, const NodePath& path) {
  std::size_t consumed = 0;
  const Stmt* s = WalkStmts<const TestDecl, const Stmt>(test, path, consumed);
  return consumed == path.size() ? s : nullptr;
}

std::vector<Stmt>* FindStmtList(TestDecl& test, const NodePath& path,
                                std::size_t* index) {
  if (path.empty()) return nullptr;
  if (path.size() == 1) {
    if (path[0] >= test.body.size()) return nullptr;
    *index = path[0];
    return &test.body;
  }
  NodePath parent_path(path.begin(), path.end() - 1);
  std::size_t consumed = 0;
  Stmt* parent = WalkStmts<TestDecl, Stmt>(test, parent_path, consumed);
  if (parent == nullptr || consumed != parent_path.size()) return nullptr;
  std::size_t i = path.back();
  if (i < parent->exprs.size()) return nullptr;
  i -= parent->exprs.size();
  if (i < parent->body.size()) {
    *index = i;
    return &parent->body;
  }
  i -= parent->body.size();
  if (i < parent->else_body.size()) {
    *index = i;
    return &parent->else_body;
  }
  return nullptr;
}

}  // namespace ampdiff
