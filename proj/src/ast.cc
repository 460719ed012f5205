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

#include "ampdiff/ast.h"

#include <algorithm>
#include <set>
#include <utility>

namespace ampdiff {

std::string ToString(const SourcePos& pos) {
  return pos.file + ":" + std::to_string(pos.line) + ":" +
         std::to_string(pos.column);
}

const char* Spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

const char* Spelling(UnaryOp op) { return op == UnaryOp::kNot ? "!" : "-"; }

Expr Expr::Int(std::int64_t v, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kIntLit;
  e.int_value = v;
  e.pos = std::move(pos);
  return e;
}

Expr Expr::Str(std::string v, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kStrLit;
  e.text = std::move(v);
  e.pos = std::move(pos);
  return e;
}

Expr Expr::Bool(bool v, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kBoolLit;
  e.bool_value = v;
  e.pos = std::move(pos);
  return e;
}

Expr Expr::Null(SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kNullLit;
  e.pos = std::move(pos);
  return e;
}

Expr Expr::Var(std::string name, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kVar;
  e.text = std::move(name);
  e.pos = std::move(pos);
  return e;
}

Expr Expr::Field(Expr base, std::string field) {
  Expr e;
  e.kind = ExprKind::kField;
  e.pos = base.pos;
  e.text = std::move(field);
  e.children.push_back(std::move(base));
  return e;
}

Expr Expr::ToStr(Expr operand) {
  Expr e;
  e.kind = ExprKind::kToStr;
  e.pos = operand.pos;
  e.children.push_back(std::move(operand));
  return e;
}

Expr Expr::Call(std::string callee, std::vector<Expr> args, SourcePos pos) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.text = std::move(callee);
  e.children = std::move(args);
  e.pos = std::move(pos);
  return e;
}

bool Expr::IsLiteral() const {
  return kind == ExprKind::kIntLit || kind == ExprKind::kStrLit ||
         kind == ExprKind::kBoolLit || kind == ExprKind::kNullLit;
}

Stmt Stmt::Let(std::string name, Expr value, SourcePos pos) {
  Stmt s;
  s.kind = StmtKind::kLet;
  s.name = std::move(name);
  s.exprs.push_back(std::move(value));
  s.pos = std::move(pos);
  return s;
}

Stmt Stmt::ExprStmt(Expr e, SourcePos pos) {
  Stmt s;
  s.kind = StmtKind::kExpr;
  s.exprs.push_back(std::move(e));
  s.pos = std::move(pos);
  return s;
}

Stmt Stmt::AssertEq(Expr expected, Expr actual, SourcePos pos) {
  Stmt s;
  s.kind = StmtKind::kAssertEq;
  s.exprs.push_back(std::move(expected));
  s.exprs.push_back(std::move(actual));
  s.pos = std::move(pos);
  return s;
}

namespace {

Stmt Unary(StmtKind kind, Expr e, SourcePos pos) {
  Stmt s;
  s.kind = kind;
  s.exprs.push_back(std::move(e));
  s.pos = std::move(pos);
  return s;
}

}  // namespace

Stmt Stmt::AssertTrue(Expr e, SourcePos pos) {
  return Unary(StmtKind::kAssertTrue, std::move(e), std::move(pos));
}

Stmt Stmt::AssertFalse(Expr e, SourcePos pos) {
  return Unary(StmtKind::kAssertFalse, std::move(e), std::move(pos));
}

Stmt Stmt::AssertNull(Expr e, SourcePos pos) {
  return Unary(StmtKind::kAssertNull, std::move(e), std::move(pos));
}

Stmt Stmt::ExpectFail(std::string kind, Expr message, std::vector<Stmt> body,
                      SourcePos pos) {
  Stmt s;
  s.kind = StmtKind::kExpectFail;
  s.name = std::move(kind);
  s.exprs.push_back(std::move(message));
  s.body = std::move(body);
  s.pos = std::move(pos);
  return s;
}

bool Stmt::IsAssertion() const {
  switch (kind) {
    case StmtKind::kAssertEq:
    case StmtKind::kAssertTrue:
    case StmtKind::kAssertFalse:
    case StmtKind::kAssertNull:
    case StmtKind::kExpectFail: return true;
    default: return false;
  }
}

std::size_t Stmt::ChildCount() const {
  return exprs.size() + body.size() + else_body.size();
}

const std::string& DeclName(const Decl& decl) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; },
                    decl);
}

void Program::Merge(Program other) {
  std::set<std::string> names;
  for (const auto& [file, decls] : files) {
    for (const auto& d : decls) names.insert(DeclName(d));
  }
  for (const auto& [file, decls] : other.files) {
    for (const auto& d : decls) {
      if (!names.insert(DeclName(d)).second) throw DuplicateName(DeclName(d));
    }
  }
  for (auto& [file, decls] : other.files) {
    auto& target = files[file];
    std::move(decls.begin(), decls.end(), std::back_inserter(target));
  }
}

void TestSuite::Merge(TestSuite other) {
  for (auto& t : other.tests) {
    if (Find(t.name) != nullptr) throw DuplicateName(t.name);
    tests.push_back(std::move(t));
  }
}

const TestDecl* TestSuite::Find(const std::string& name) const {
  auto it = std::find_if(tests.begin(), tests.end(),
                         [&](const TestDecl& t) { return t.name == name; });
  return it == tests.end() ? nullptr : &*it;
}

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case ExprKind::kIntLit:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::kBoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::kUnary:
      if (a.unary_op != b.unary_op) return false;
      break;
    case ExprKind::kBinary:
      if (a.binary_op != b.binary_op) return false;
      break;
    default: break;
  }
  if (a.text != b.text) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!StructurallyEqual(a.children[i], b.children[i])) return false;
  }
  return true;
}

bool StructurallyEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(a[i], b[i])) return false;
  }
  return true;
}

bool StructurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.has_else != b.has_else ||
      a.exprs.size() != b.exprs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.exprs.size(); ++i) {
    if (!StructurallyEqual(a.exprs[i], b.exprs[i])) return false;
  }
  return StructurallyEqual(a.body, b.body) &&
         StructurallyEqual(a.else_body, b.else_body);
}

bool StructurallyEqual(const TestDecl& a, const TestDecl& b) {
  return a.name == b.name && StructurallyEqual(a.body, b.body);
}

bool StructurallyEqual(const TestSuite& a, const TestSuite& b) {
  if (a.tests.size() != b.tests.size()) return false;
  for (std::size_t i = 0; i < a.tests.size(); ++i) {
    if (!StructurallyEqual(a.tests[i], b.tests[i])) return false;
  }
  return true;
}

bool StructurallyEqual(const Program& a, const Program& b) {
  if (a.files.size() != b.files.size()) return false;
  for (auto ia = a.files.begin(), ib = b.files.begin(); ia != a.files.end();
       ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.size() != ib->second.size()) {
      return false;
    }
    for (std::size_t i = 0; i < ia->second.size(); ++i) {
      const Decl& da = ia->second[i];
      const Decl& db = ib->second[i];
      if (da.index() != db.index()) return false;
      if (const auto* ra = std::get_if<RecordDecl>(&da)) {
        const auto& rb = std::get<RecordDecl>(db);
        if (ra->name != rb.name || ra->fields != rb.fields) return false;
      } else {
        const auto& fa = std::get<FunctionDecl>(da);
        const auto& fb = std::get<FunctionDecl>(db);
        if (fa.name != fb.name || fa.params != fb.params ||
            !StructurallyEqual(fa.body, fb.body)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace ampdiff
