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

#include "ampdiff/render.h"

#include <variant>

namespace ampdiff {
namespace {

int PrecedenceOf(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 1;
    case BinaryOp::kAnd: return 2;
    case BinaryOp::kEq:
    case BinaryOp::kNe: return 3;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 4;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 5;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kMod: return 6;
  }
  return 0;
}

constexpr int kUnaryPrec = 7;
constexpr int kPostfixPrec = 8;

int PrecedenceOf(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary: return PrecedenceOf(e.binary_op);
    case ExprKind::kUnary: return kUnaryPrec;
    // A negative literal starts with a unary minus, so it binds like one.
    case ExprKind::kIntLit: return e.int_value < 0 ? kUnaryPrec : 9;
    default: return 9;
  }
}

void RenderExpr(const Expr& e, std::string& out);

void RenderWrapped(const Expr& e, int min_prec, std::string& out) {
  if (PrecedenceOf(e) < min_prec) {
    out += '(';
    RenderExpr(e, out);
    out += ')';
  } else {
    RenderExpr(e, out);
  }
}

void RenderArgs(const std::vector<Expr>& args, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    RenderExpr(args[i], out);
  }
  out += ')';
}

void RenderExpr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kIntLit: out += std::to_string(e.int_value); return;
    case ExprKind::kStrLit: out += QuoteString(e.text); return;
    case ExprKind::kBoolLit: out += e.bool_value ? "true" : "false"; return;
    case ExprKind::kNullLit: out += "null"; return;
    case ExprKind::kVar: out += e.text; return;
    case ExprKind::kUnary: {
      out += Spelling(e.unary_op);
      const Expr& operand = e.children[0];
      // "-5" would re-parse as a single literal.
      bool literal_after_minus = e.unary_op == UnaryOp::kNeg &&
                                 operand.kind == ExprKind::kIntLit &&
                                 operand.int_value >= 0;
      if (literal_after_minus) {
        out += '(';
        RenderExpr(operand, out);
        out += ')';
      } else {
        RenderWrapped(operand, kUnaryPrec, out);
      }
      return;
    }
    case ExprKind::kBinary: {
      int prec = PrecedenceOf(e.binary_op);
      RenderWrapped(e.children[0], prec, out);
      out += ' ';
      out += Spelling(e.binary_op);
      out += ' ';
      RenderWrapped(e.children[1], prec + 1, out);
      return;
    }
    case ExprKind::kCall:
      out += e.text;
      RenderArgs(e.children, out);
      return;
    case ExprKind::kNew:
      out += "new ";
      out += e.text;
      RenderArgs(e.children, out);
      return;
    case ExprKind::kField:
      RenderWrapped(e.children[0], kPostfixPrec, out);
      out += '.';
      out += e.text;
      return;
    case ExprKind::kToStr:
      out += "str(";
      RenderExpr(e.children[0], out);
      out += ')';
      return;
  }
}

void Indent(int n, std::string& out) {
  out.append(static_cast<std::size_t>(n) * 4, ' ');
}

void RenderStmt(const Stmt& s, int indent, std::string& out);

void RenderBlock(const std::vector<Stmt>& body, int indent, std::string& out) {
  out += "{\n";
  for (const Stmt& s : body) RenderStmt(s, indent + 1, out);
  Indent(indent, out);
  out += '}';
}

void RenderStmt(const Stmt& s, int indent, std::string& out) {
  Indent(indent, out);
  switch (s.kind) {
    case StmtKind::kLet:
      out += "let " + s.name + " = ";
      RenderExpr(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kAssign:
      out += s.name + " = ";
      RenderExpr(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kExpr:
      RenderExpr(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kReturn:
      out += "return";
      if (!s.exprs.empty()) {
        out += ' ';
        RenderExpr(s.exprs[0], out);
      }
      out += ";\n";
      return;
    case StmtKind::kIf:
      out += "if ";
      RenderExpr(s.exprs[0], out);
      out += ' ';
      RenderBlock(s.body, indent, out);
      if (s.has_else) {
        out += " else ";
        RenderBlock(s.else_body, indent, out);
      }
      out += '\n';
      return;
    case StmtKind::kWhile:
      out += "while ";
      RenderExpr(s.exprs[0], out);
      out += ' ';
      RenderBlock(s.body, indent, out);
      out += '\n';
      return;
    case StmtKind::kThrow:
      out += "throw " + QuoteString(s.name) + ", ";
      RenderExpr(s.exprs[0], out);
      out += ";\n";
      return;
    case StmtKind::kAssertEq:
      out += "assert_eq(";
      RenderExpr(s.exprs[0], out);
      out += ", ";
      RenderExpr(s.exprs[1], out);
      out += ");\n";
      return;
    case StmtKind::kAssertTrue:
    case StmtKind::kAssertFalse:
    case StmtKind::kAssertNull:
      out += s.kind == StmtKind::kAssertTrue    ? "assert_true("
             : s.kind == StmtKind::kAssertFalse ? "assert_false("
                                                : "assert_null(";
      RenderExpr(s.exprs[0], out);
      out += ");\n";
      return;
    case StmtKind::kExpectFail:
      out += "expect_fail(" + QuoteString(s.name) + ", ";
      RenderExpr(s.exprs[0], out);
      out += ") ";
      RenderBlock(s.body, indent, out);
      out += '\n';
      return;
  }
}

void RenderTest(const TestDecl& t, std::string& out) {
  out += "test " + t.name + " ";
  RenderBlock(t.body, 0, out);
  out += '\n';
}

}  // namespace

std::string QuoteString(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string Render(const Expr& expr) {
  std::string out;
  RenderExpr(expr, out);
  return out;
}

std::string Render(const Stmt& stmt, int indent) {
  std::string out;
  RenderStmt(stmt, indent, out);
  return out;
}

std::string RenderBody(const std::vector<Stmt>& body) {
  std::string out;
  for (const Stmt& s : body) RenderStmt(s, 1, out);
  return out;
}

std::string Render(const TestDecl& test) {
  std::string out;
  RenderTest(test, out);
  return out;
}

std::string Render(const TestSuite& suite) {
  std::string out;
  for (std::size_t i = 0; i < suite.tests.size(); ++i) {
    if (i > 0) out += '\n';
    RenderTest(suite.tests[i], out);
  }
  return out;
}

std::string Render(const Program& program) {
  std::string out;
  bool first = true;
  for (const auto& [file, decls] : program.files) {
    for (const Decl& d : decls) {
      if (!first) out += '\n';
      first = false;
      if (const auto* r = std::get_if<RecordDecl>(&d)) {
        out += "record " + r->name + " { ";
        for (std::size_t i = 0; i < r->fields.size(); ++i) {
          if (i > 0) out += ", ";
          out += r->fields[i];
        }
        out += " }\n";
      } else {
        const auto& f = std::get<FunctionDecl>(d);
        out += "fn " + f.name + "(";
        for (std::size_t i = 0; i < f.params.size(); ++i) {
          if (i > 0) out += ", ";
          out += f.params[i];
        }
        out += ") ";
        RenderBlock(f.body, 0, out);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace ampdiff
