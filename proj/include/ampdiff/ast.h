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

#ifndef AMPDIFF_AST_H_
#define AMPDIFF_AST_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ampdiff {

struct SourcePos {
  std::string file;
  int line = 0;
  int column = 0;

  bool operator==(const SourcePos&) const = default;
  auto operator<=>(const SourcePos&) const = default;
};

std::string ToString(const SourcePos& pos);

enum class ExprKind {
  kIntLit,
  kStrLit,
  kBoolLit,
  kNullLit,
  kVar,
  kUnary,
  kBinary,
  kCall,
  kNew,
  kField,
  kToStr,
};

enum class UnaryOp { kNot, kNeg };

enum class BinaryOp {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kAnd,
  kOr,
};

const char* Spelling(BinaryOp op);
const char* Spelling(UnaryOp op);

// A single node type for every expression form. Which members are
// meaningful depends on `kind`:
//   kIntLit   int_value
//   kStrLit   text (unescaped contents)
//   kBoolLit  bool_value
//   kVar      text (variable name)
//   kUnary    unary_op, children[0]
//   kBinary   binary_op, children[0..1]
//   kCall     text (callee), children = arguments
//   kNew      text (record name), children = arguments
//   kField    text (field name), children[0] = base
//   kToStr    children[0]
struct Expr {
  ExprKind kind = ExprKind::kNullLit;
  SourcePos pos;
  std::int64_t int_value = 0;
  bool bool_value = false;
  UnaryOp unary_op = UnaryOp::kNot;
  BinaryOp binary_op = BinaryOp::kAdd;
  std::string text;
  std::vector<Expr> children;

  static Expr Int(std::int64_t v, SourcePos pos = {});
  static Expr Str(std::string v, SourcePos pos = {});
  static Expr Bool(bool v, SourcePos pos = {});
  static Expr Null(SourcePos pos = {});
  static Expr Var(std::string name, SourcePos pos = {});
  static Expr Field(Expr base, std::string field);
  static Expr ToStr(Expr operand);
  static Expr Call(std::string callee, std::vector<Expr> args,
                   SourcePos pos = {});

  bool IsLiteral() const;
};

enum class StmtKind {
  kLet,
  kAssign,
  kExpr,
  kReturn,
  kIf,
  kWhile,
  kThrow,
  kAssertEq,
  kAssertTrue,
  kAssertFalse,
  kAssertNull,
  kExpectFail,
};

// Statements use the same flat layout. `name` is the bound variable for
// let/assign and the error kind for throw/expect_fail.
//   kLet, kAssign  exprs[0] = value
//   kExpr          exprs[0]
//   kReturn        exprs empty or exprs[0]
//   kIf            exprs[0] = condition, body = then, else_body (if has_else)
//   kWhile         exprs[0] = condition, body
//   kThrow         exprs[0] = message
//   kAssertEq      exprs[0] = expected, exprs[1] = actual
//   kAssert{True,False,Null}  exprs[0]
//   kExpectFail    exprs[0] = expected message, body
//
// Child indices used by literal-site paths enumerate exprs first, then
// body, then else_body.
struct Stmt {
  StmtKind kind = StmtKind::kExpr;
  SourcePos pos;
  std::string name;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  bool has_else = false;

  static Stmt Let(std::string name, Expr value, SourcePos pos = {});
  static Stmt ExprStmt(Expr e, SourcePos pos = {});
  static Stmt AssertEq(Expr expected, Expr actual, SourcePos pos = {});
  static Stmt AssertTrue(Expr e, SourcePos pos = {});
  static Stmt AssertFalse(Expr e, SourcePos pos = {});
  static Stmt AssertNull(Expr e, SourcePos pos = {});
  static Stmt ExpectFail(std::string kind, Expr message, std::vector<Stmt> body,
                         SourcePos pos = {});

  bool IsAssertion() const;
  std::size_t ChildCount() const;
};

struct RecordDecl {
  std::string name;
  std::vector<std::string> fields;
  SourcePos pos;
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;
  SourcePos pos;
};

using Decl = std::variant<RecordDecl, FunctionDecl>;

const std::string& DeclName(const Decl& decl);

class DuplicateName : public std::runtime_error {
 public:
  explicit DuplicateName(const std::string& name)
      : std::runtime_error("duplicate name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// A parsed subject program: every source file with its declarations.
struct Program {
  std::map<std::string, std::vector<Decl>> files;

  // Adds the files of `other`; throws DuplicateName on any clash.
  void Merge(Program other);
};

struct TestDecl {
  std::string name;
  std::vector<Stmt> body;
  SourcePos pos;
};

struct TestSuite {
  std::vector<TestDecl> tests;

  void Merge(TestSuite other);
  const TestDecl* Find(const std::string& name) const;
};

// Structural equality: positions are ignored.
bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Stmt& a, const Stmt& b);
bool StructurallyEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b);
bool StructurallyEqual(const TestDecl& a, const TestDecl& b);
bool StructurallyEqual(const TestSuite& a, const TestSuite& b);
bool StructurallyEqual(const Program& a, const Program& b);

}  // namespace ampdiff

#endif  // AMPDIFF_AST_H_
