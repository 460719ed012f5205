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

#include "ampdiff/parser.h"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace ampdiff {

ParseError::ParseError(std::string file, int line, int column,
                       std::string expected)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                         std::to_string(column) + ": parse error: expected " +
                         expected),
      file_(std::move(file)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

bool IsBuiltinFunction(std::string_view name) {
  return name == "len" || name == "substr" || name == "index_of";
}

namespace {

enum class Tok {
  kEnd,
  kIdent,
  kInt,
  kString,
  kKeyword,
  kPunct,
};

struct Token {
  Tok type = Tok::kEnd;
  std::string text;  // identifier, keyword, punctuation, or string contents
  std::uint64_t int_value = 0;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;  // column just past the token
};

constexpr std::array kKeywords = {
    "record",      "fn",           "let",         "return",      "if",
    "else",        "while",        "throw",       "true",        "false",
    "null",        "new",          "str",         "test",        "assert_eq",
    "assert_true", "assert_false", "assert_null", "expect_fail",
};

bool IsKeyword(std::string_view s) {
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file)
      : src_(src), file_(file) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (i_ >= src_.size()) {
        t.type = Tok::kEnd;
        t.end_line = line_;
        t.end_column = col_;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[i_];
      if (IsIdentStart(c)) {
        std::size_t start = i_;
        while (i_ < src_.size() && IsIdentChar(src_[i_])) Advance();
        t.text = std::string(src_.substr(start, i_ - start));
        t.type = IsKeyword(t.text) ? Tok::kKeyword : Tok::kIdent;
      } else if (c >= '0' && c <= '9') {
        LexInt(t);
      } else if (c == '"') {
        LexString(t);
      } else {
        LexPunct(t);
      }
      t.end_line = line_;
      t.end_column = col_;
      out.push_back(std::move(t));
    }
  }

 private:
  void Advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError(file_, line_, col_, what);
  }

  void SkipSpaceAndComments() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Advance();
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  void LexInt(Token& t) {
    t.type = Tok::kInt;
    constexpr std::uint64_t kLimit =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) +
        1;
    std::uint64_t v = 0;
    while (i_ < src_.size() && src_[i_] >= '0' && src_[i_] <= '9') {
      std::uint64_t digit = static_cast<std::uint64_t>(src_[i_] - '0');
      if (v > (kLimit - digit) / 10) Fail("integer literal within 64 bits");
      v = v * 10 + digit;
      Advance();
    }
    if (i_ < src_.size() && IsIdentChar(src_[i_])) Fail("end of number");
    t.int_value = v;
  }

  void LexString(Token& t) {
    t.type = Tok::kString;
    Advance();  // opening quote
    for (;;) {
      if (i_ >= src_.size()) Fail("closing '\"'");
      char c = src_[i_];
      if (c == '"') {
        Advance();
        return;
      }
      if (c == '\n') Fail("closing '\"'");
      if (c == '\\') {
        Advance();
        if (i_ >= src_.size()) Fail("escape character");
        switch (src_[i_]) {
          case '"': t.text += '"'; break;
          case '\\': t.text += '\\'; break;
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          default: Fail("one of \\\" \\\\ \\n \\t");
        }
        Advance();
        continue;
      }
      t.text += c;
      Advance();
    }
  }

  void LexPunct(Token& t) {
    t.type = Tok::kPunct;
    static constexpr std::array kTwo = {"==", "!=", "<=", ">=", "&&", "||"};
    if (i_ + 1 < src_.size()) {
      std::string_view two = src_.substr(i_, 2);
      for (const char* p : kTwo) {
        if (two == p) {
          t.text = std::string(two);
          Advance();
          Advance();
          return;
        }
      }
    }
    static constexpr std::string_view kOne = "{}(),;=.!-+*/%<>";
    char c = src_[i_];
    if (kOne.find(c) == std::string_view::npos) Fail("a token");
    t.text = std::string(1, c);
    Advance();
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

int Precedence(const Token& t) {
  if (t.type != Tok::kPunct) return -1;
  const std::string& s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "==" || s == "!=") return 3;
  if (s == "<" || s == "<=" || s == ">" || s == ">=") return 4;
  if (s == "+" || s == "-") return 5;
  if (s == "*" || s == "/" || s == "%") return 6;
  return -1;
}

BinaryOp ToBinaryOp(const std::string& s) {
  if (s == "||") return BinaryOp::kOr;
  if (s == "&&") return BinaryOp::kAnd;
  if (s == "==") return BinaryOp::kEq;
  if (s == "!=") return BinaryOp::kNe;
  if (s == "<") return BinaryOp::kLt;
  if (s == "<=") return BinaryOp::kLe;
  if (s == ">") return BinaryOp::kGt;
  if (s == ">=") return BinaryOp::kGe;
  if (s == "+") return BinaryOp::kAdd;
  if (s == "-") return BinaryOp::kSub;
  if (s == "*") return BinaryOp::kMul;
  if (s == "/") return BinaryOp::kDiv;
  return BinaryOp::kMod;
}

class Parser {
 public:
  Parser(std::string_view src, const std::string& file)
      : file_(file), toks_(Lexer(src, file).Run()) {}

  Program ParseProgramFile() {
    Program program;
    auto& decls = program.files[file_];
    std::set<std::string> names;
    while (!AtEnd()) {
      Decl d;
      if (IsKw("record")) {
        d = ParseRecord();
      } else if (IsKw("fn")) {
        d = ParseFunction();
      } else {
        Fail("'record' or 'fn'");
      }
      const std::string& name = DeclName(d);
      if (IsBuiltinFunction(name) || !names.insert(name).second) {
        throw DuplicateName(name);
      }
      decls.push_back(std::move(d));
    }
    return program;
  }

  TestSuite ParseTestFile() {
    TestSuite suite;
    std::set<std::string> names;
    while (!AtEnd()) {
      if (!IsKw("test")) Fail("'test'");
      TestDecl t;
      t.pos = PosOf(Peek());
      Next();
      t.name = ExpectIdent();
      in_tests_ = true;
      t.body = ParseBlock();
      if (!names.insert(t.name).second) throw DuplicateName(t.name);
      suite.tests.push_back(std::move(t));
    }
    return suite;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  bool AtEnd() const { return Peek().type == Tok::kEnd; }

  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_ = &t;
    return t;
  }

  bool IsKw(std::string_view kw) const {
    return Peek().type == Tok::kKeyword && Peek().text == kw;
  }

  bool IsPunct(std::string_view p, std::size_t ahead = 0) const {
    return Peek(ahead).type == Tok::kPunct && Peek(ahead).text == p;
  }

  SourcePos PosOf(const Token& t) const { return {file_, t.line, t.column}; }

  [[noreturn]] void Fail(const std::string& expected) const {
    if (last_ == nullptr) throw ParseError(file_, 1, 1, expected);
    throw ParseError(file_, last_->end_line, last_->end_column, expected);
  }

  void ExpectPunct(std::string_view p) {
    if (!IsPunct(p)) Fail("'" + std::string(p) + "'");
    Next();
  }

  void ExpectKw(std::string_view kw) {
    if (!IsKw(kw)) Fail("'" + std::string(kw) + "'");
    Next();
  }

  std::string ExpectIdent() {
    if (Peek().type != Tok::kIdent) Fail("identifier");
    return Next().text;
  }

  std::string ExpectString() {
    if (Peek().type != Tok::kString) Fail("string literal");
    return Next().text;
  }

  RecordDecl ParseRecord() {
    RecordDecl r;
    r.pos = PosOf(Peek());
    ExpectKw("record");
    r.name = ExpectIdent();
    ExpectPunct("{");
    std::set<std::string> seen;
    for (;;) {
      std::string f = ExpectIdent();
      if (!seen.insert(f).second) throw DuplicateName(r.name + "." + f);
      r.fields.push_back(std::move(f));
      if (IsPunct(",")) {
        Next();
        continue;
      }
      break;
    }
    ExpectPunct("}");
    return r;
  }

  FunctionDecl ParseFunction() {
    FunctionDecl f;
    f.pos = PosOf(Peek());
    ExpectKw("fn");
    f.name = ExpectIdent();
    ExpectPunct("(");
    if (!IsPunct(")")) {
      std::set<std::string> seen;
      for (;;) {
        std::string p = ExpectIdent();
        if (!seen.insert(p).second) throw DuplicateName(f.name + "." + p);
        f.params.push_back(std::move(p));
        if (IsPunct(",")) {
          Next();
          continue;
        }
        break;
      }
    }
    ExpectPunct(")");
    in_tests_ = false;
    f.body = ParseBlock();
    return f;
  }

  std::vector<Stmt> ParseBlock() {
    ExpectPunct("{");
    std::vector<Stmt> out;
    while (!IsPunct("}")) {
      if (AtEnd()) Fail("'}'");
      out.push_back(ParseStmt());
    }
    Next();
    return out;
  }

  Stmt ParseStmt() {
    Stmt s;
    s.pos = PosOf(Peek());
    if (IsKw("let")) {
      Next();
      s.kind = StmtKind::kLet;
      s.name = ExpectIdent();
      ExpectPunct("=");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(";");
    } else if (Peek().type == Tok::kIdent && IsPunct("=", 1)) {
      s.kind = StmtKind::kAssign;
      s.name = Next().text;
      Next();
      s.exprs.push_back(ParseExpr());
      ExpectPunct(";");
    } else if (IsKw("return")) {
      Next();
      s.kind = StmtKind::kReturn;
      if (!IsPunct(";")) s.exprs.push_back(ParseExpr());
      ExpectPunct(";");
    } else if (IsKw("if")) {
      Next();
      s.kind = StmtKind::kIf;
      s.exprs.push_back(ParseExpr());
      s.body = ParseBlock();
      if (IsKw("else")) {
        Next();
        s.has_else = true;
        s.else_body = ParseBlock();
      }
    } else if (IsKw("while")) {
      Next();
      s.kind = StmtKind::kWhile;
      s.exprs.push_back(ParseExpr());
      s.body = ParseBlock();
    } else if (IsKw("throw")) {
      Next();
      s.kind = StmtKind::kThrow;
      s.name = ExpectString();
      ExpectPunct(",");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(";");
    } else if (in_tests_ && IsKw("assert_eq")) {
      Next();
      s.kind = StmtKind::kAssertEq;
      ExpectPunct("(");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(",");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(")");
      ExpectPunct(";");
    } else if (in_tests_ && (IsKw("assert_true") || IsKw("assert_false") ||
                             IsKw("assert_null"))) {
      const std::string& kw = Next().text;
      s.kind = kw == "assert_true"    ? StmtKind::kAssertTrue
               : kw == "assert_false" ? StmtKind::kAssertFalse
                                      : StmtKind::kAssertNull;
      ExpectPunct("(");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(")");
      ExpectPunct(";");
    } else if (in_tests_ && IsKw("expect_fail")) {
      if (in_expect_fail_) Fail("a statement other than a nested expect_fail");
      Next();
      s.kind = StmtKind::kExpectFail;
      ExpectPunct("(");
      s.name = ExpectString();
      ExpectPunct(",");
      s.exprs.push_back(ParseExpr());
      ExpectPunct(")");
      in_expect_fail_ = true;
      s.body = ParseBlock();
      in_expect_fail_ = false;
    } else {
      s.kind = StmtKind::kExpr;
      s.exprs.push_back(ParseExpr());
      ExpectPunct(";");
    }
    return s;
  }

  Expr ParseExpr(int min_prec = 1) {
    Expr lhs = ParseUnary();
    for (;;) {
      int prec = Precedence(Peek());
      if (prec < min_prec) return lhs;
      BinaryOp op = ToBinaryOp(Next().text);
      Expr rhs = ParseExpr(prec + 1);
      Expr bin;
      bin.kind = ExprKind::kBinary;
      bin.binary_op = op;
      bin.pos = lhs.pos;
      bin.children.push_back(std::move(lhs));
      bin.children.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
  }

  Expr ParseUnary() {
    if (IsPunct("!") || IsPunct("-")) {
      SourcePos pos = PosOf(Peek());
      bool neg = Next().text == "-";
      if (neg && Peek().type == Tok::kInt) {
        // A minus sign directly before an integer is part of the literal,
        // which makes the minimum 64-bit value expressible.
        std::uint64_t magnitude = Next().int_value;
        return ParsePostfix(Expr::Int(static_cast<std::int64_t>(0 - magnitude),
                                      std::move(pos)));
      }
      Expr e;
      e.kind = ExprKind::kUnary;
      e.unary_op = neg ? UnaryOp::kNeg : UnaryOp::kNot;
      e.pos = std::move(pos);
      e.children.push_back(ParseUnary());
      return e;
    }
    return ParsePostfix(ParsePrimary());
  }

  Expr ParsePostfix(Expr e) {
    while (IsPunct(".")) {
      Next();
      e = Expr::Field(std::move(e), ExpectIdent());
    }
    return e;
  }

  std::vector<Expr> ParseArgs() {
    ExpectPunct("(");
    std::vector<Expr> args;
    if (!IsPunct(")")) {
      for (;;) {
        args.push_back(ParseExpr());
        if (IsPunct(",")) {
          Next();
          continue;
        }
        break;
      }
    }
    ExpectPunct(")");
    return args;
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    SourcePos pos = PosOf(t);
    switch (t.type) {
      case Tok::kInt: {
        std::uint64_t v = Next().int_value;
        if (v > static_cast<std::uint64_t>(
                    std::numeric_limits<std::int64_t>::max())) {
          Fail("integer literal within 64 bits");
        }
        return Expr::Int(static_cast<std::int64_t>(v), pos);
      }
      case Tok::kString: return Expr::Str(Next().text, pos);
      case Tok::kIdent: {
        std::string name = Next().text;
        if (IsPunct("(")) return Expr::Call(std::move(name), ParseArgs(), pos);
        return Expr::Var(std::move(name), pos);
      }
      case Tok::kKeyword: {
        if (t.text == "true" || t.text == "false") {
          return Expr::Bool(Next().text == "true", pos);
        }
        if (t.text == "null") {
          Next();
          return Expr::Null(pos);
        }
        if (t.text == "new") {
          Next();
          Expr e;
          e.kind = ExprKind::kNew;
          e.pos = pos;
          e.text = ExpectIdent();
          e.children = ParseArgs();
          return e;
        }
        if (t.text == "str") {
          Next();
          ExpectPunct("(");
          Expr e = Expr::ToStr(ParseExpr());
          e.pos = pos;
          ExpectPunct(")");
          return e;
        }
        break;
      }
      case Tok::kPunct:
        if (t.text == "(") {
          Next();
          Expr e = ParseExpr();
          ExpectPunct(")");
          return e;
        }
        break;
      case Tok::kEnd: break;
    }
    Fail("expression");
  }

  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Token* last_ = nullptr;
  bool in_tests_ = false;
  bool in_expect_fail_ = false;
};

}  // namespace

Program ParseProgram(std::string_view source, const std::string& file) {
  return Parser(source, file).ParseProgramFile();
}

TestSuite ParseTests(std::string_view source, const std::string& file) {
  return Parser(source, file).ParseTestFile();
}

}  // namespace ampdiff
