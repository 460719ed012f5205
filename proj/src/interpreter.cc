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

#include "ampdiff/interpreter.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "ampdiff/render.h"

namespace ampdiff {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDivByZero: return "DivByZero";
    case ErrorKind::kTypeError: return "TypeError";
    case ErrorKind::kUndefinedName: return "UndefinedName";
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kUserThrow: return "UserThrow";
    case ErrorKind::kTimeout: return "Timeout";
  }
  return "?";
}

const char* ToString(Status status) {
  switch (status) {
    case Status::kPass: return "pass";
    case Status::kAssertionFailure: return "assertion_failure";
    case Status::kError: return "error";
  }
  return "?";
}

std::string RuntimeError::KindText() const {
  return kind == ErrorKind::kUserThrow ? thrown_kind : ToString(kind);
}

Value RuntimeError::MessageValue() const {
  return message ? Value::Str(*message) : Value::Null();
}

std::string RuntimeError::Describe() const {
  return KindText() + ": " + DisplayText(MessageValue());
}

bool SameResult(const TestOutcome& a, const TestOutcome& b) {
  if (a.status != b.status || a.steps_used != b.steps_used) return false;
  switch (a.status) {
    case Status::kPass: return true;
    case Status::kAssertionFailure: return a.failure == b.failure;
    case Status::kError: return a.error == b.error;
  }
  return false;
}

struct Interpreter::Index {
  std::unordered_map<std::string, const FunctionDecl*> functions;
  std::unordered_map<std::string, std::shared_ptr<const RecordLayout>> records;
};

namespace {

struct ErrorSignal {
  RuntimeError error;
};

struct FailureSignal {
  AssertionFailure failure;
};

enum class Flow { kNormal, kReturn };

class Frame {
 public:
  Value* Find(const std::string& name) {
    for (auto& [n, v] : vars_) {
      if (n == name) return &v;
    }
    return nullptr;
  }
  void Define(const std::string& name, Value v) {
    if (Value* slot = Find(name)) {
      *slot = std::move(v);
    } else {
      vars_.emplace_back(name, std::move(v));
    }
  }

 private:
  std::vector<std::pair<std::string, Value>> vars_;
};

std::int64_t Wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

class Run {
 public:
  Run(const Interpreter::Index& index, Fuel fuel)
      : index_(index), fuel_(fuel) {}

  Coverage& coverage() { return coverage_; }
  std::uint64_t steps() const { return steps_; }

  // Executes one top-level test statement.
  Flow TopLevel(const Stmt& s, Frame& frame) { return Exec(s, frame); }

  // Executes a top-level expression statement and hands back its value.
  Value TopLevelValue(const Stmt& s, Frame& frame) {
    Charge(s.pos);
    return Eval(s.exprs[0], frame);
  }

  Value Eval(const Expr& e, Frame& frame) {
    Charge(e.pos);
    switch (e.kind) {
      case ExprKind::kIntLit: return Value::Int(e.int_value);
      case ExprKind::kStrLit: return Value::Str(e.text);
      case ExprKind::kBoolLit: return Value::Bool(e.bool_value);
      case ExprKind::kNullLit: return Value::Null();
      case ExprKind::kVar: {
        Value* v = frame.Find(e.text);
        if (v == nullptr) Raise(ErrorKind::kUndefinedName, e.pos);
        return *v;
      }
      case ExprKind::kUnary: {
        Value v = Eval(e.children[0], frame);
        if (e.unary_op == UnaryOp::kNot) {
          if (!v.is_bool()) Raise(ErrorKind::kTypeError, e.pos);
          return Value::Bool(!v.as_bool());
        }
        if (!v.is_int()) Raise(ErrorKind::kTypeError, e.pos);
        return Value::Int(Wrap(0 - static_cast<std::uint64_t>(v.as_int())));
      }
      case ExprKind::kBinary: return EvalBinary(e, frame);
      case ExprKind::kCall: return EvalCall(e, frame);
      case ExprKind::kNew: {
        auto it = index_.records.find(e.text);
        if (it == index_.records.end()) Raise(ErrorKind::kUndefinedName, e.pos);
        if (it->second->fields.size() != e.children.size()) {
          Raise(ErrorKind::kArityMismatch, e.pos);
        }
        std::vector<Value> fields;
        fields.reserve(e.children.size());
        for (const Expr& arg : e.children) fields.push_back(Eval(arg, frame));
        return Value::Record(it->second, std::move(fields));
      }
      case ExprKind::kField: {
        Value base = Eval(e.children[0], frame);
        if (!base.is_record()) Raise(ErrorKind::kTypeError, e.pos);
        const RecordValue& r = base.as_record();
        const auto& names = r.layout->fields;
        auto it = std::find(names.begin(), names.end(), e.text);
        if (it == names.end()) Raise(ErrorKind::kUndefinedName, e.pos);
        return (*r.fields)[static_cast<std::size_t>(it - names.begin())];
      }
      case ExprKind::kToStr:
        return Value::Str(CanonicalText(Eval(e.children[0], frame)));
    }
    Raise(ErrorKind::kTypeError, e.pos);
  }

  Flow ExecBlock(const std::vector<Stmt>& body, Frame& frame) {
    for (const Stmt& s : body) {
      if (Exec(s, frame) == Flow::kReturn) return Flow::kReturn;
    }
    return Flow::kNormal;
  }

  const Value& return_value() const { return return_value_; }

 private:
  [[noreturn]] void Raise(ErrorKind kind, const SourcePos& pos) {
    RuntimeError err;
    err.kind = kind;
    err.pos = pos;
    throw ErrorSignal{std::move(err)};
  }

  void Charge(const SourcePos& pos) {
    if (steps_ >= fuel_) Raise(ErrorKind::kTimeout, pos);
    ++steps_;
  }

  bool Truth(const Expr& cond, Frame& frame) {
    Value v = Eval(cond, frame);
    if (!v.is_bool()) Raise(ErrorKind::kTypeError, cond.pos);
    return v.as_bool();
  }

  Value EvalBinary(const Expr& e, Frame& frame) {
    const SourcePos& pos = e.pos;
    if (e.binary_op == BinaryOp::kAnd || e.binary_op == BinaryOp::kOr) {
      bool lhs = Truth(e.children[0], frame);
      if (e.binary_op == BinaryOp::kAnd && !lhs) return Value::Bool(false);
      if (e.binary_op == BinaryOp::kOr && lhs) return Value::Bool(true);
      return Value::Bool(Truth(e.children[1], frame));
    }
    Value a = Eval(e.children[0], frame);
    Value b = Eval(e.children[1], frame);
    switch (e.binary_op) {
      case BinaryOp::kEq: return Value::Bool(ValuesEqual(a, b));
      case BinaryOp::kNe: return Value::Bool(!ValuesEqual(a, b));
      case BinaryOp::kAdd:
        if (a.is_str() && b.is_str())
          return Value::Str(a.as_str() + b.as_str());
        break;
      default: break;
    }
    if (!a.is_int() || !b.is_int()) Raise(ErrorKind::kTypeError, pos);
    std::int64_t x = a.as_int();
    std::int64_t y = b.as_int();
    auto ux = static_cast<std::uint64_t>(x);
    auto uy = static_cast<std::uint64_t>(y);
    switch (e.binary_op) {
      case BinaryOp::kAdd: return Value::Int(Wrap(ux + uy));
      case BinaryOp::kSub: return Value::Int(Wrap(ux - uy));
      case BinaryOp::kMul: return Value::Int(Wrap(ux * uy));
      case BinaryOp::kDiv:
        if (y == 0) Raise(ErrorKind::kDivByZero, pos);
        if (x == std::numeric_limits<std::int64_t>::min() && y == -1) {
          return Value::Int(x);
        }
        return Value::Int(x / y);
      case BinaryOp::kMod:
        if (y == 0) Raise(ErrorKind::kDivByZero, pos);
        if (y == -1) return Value::Int(0);
        return Value::Int(x % y);
      case BinaryOp::kLt: return Value::Bool(x < y);
      case BinaryOp::kLe: return Value::Bool(x <= y);
      case BinaryOp::kGt: return Value::Bool(x > y);
      case BinaryOp::kGe: return Value::Bool(x >= y);
      default: Raise(ErrorKind::kTypeError, pos);
    }
  }

  Value EvalBuiltin(const Expr& e, std::vector<Value> args) {
    const SourcePos& pos = e.pos;
    if (e.text == "len") {
      if (args.size() != 1) Raise(ErrorKind::kArityMismatch, pos);
      if (!args[0].is_str()) Raise(ErrorKind::kTypeError, pos);
      return Value::Int(static_cast<std::int64_t>(args[0].as_str().size()));
    }
    if (e.text == "substr") {
      if (args.size() != 3) Raise(ErrorKind::kArityMismatch, pos);
      if (!args[0].is_str() || !args[1].is_int() || !args[2].is_int()) {
        Raise(ErrorKind::kTypeError, pos);
      }
      const std::string& s = args[0].as_str();
      auto size = static_cast<std::int64_t>(s.size());
      std::int64_t start = std::clamp<std::int64_t>(args[1].as_int(), 0, size);
      std::int64_t count =
          std::clamp<std::int64_t>(args[2].as_int(), 0, size - start);
      return Value::Str(s.substr(static_cast<std::size_t>(start),
                                 static_cast<std::size_t>(count)));
    }
    // index_of
    if (args.size() != 2) Raise(ErrorKind::kArityMismatch, pos);
    if (!args[0].is_str() || !args[1].is_str())
      Raise(ErrorKind::kTypeError, pos);
    std::size_t at = args[0].as_str().find(args[1].as_str());
    return Value::Int(at == std::string::npos ? -1
                                              : static_cast<std::int64_t>(at));
  }

  Value EvalCall(const Expr& e, Frame& frame) {
    auto it = index_.functions.find(e.text);
    bool builtin = it == index_.functions.end();
    if (builtin && e.text != "len" && e.text != "substr" &&
        e.text != "index_of") {
      Raise(ErrorKind::kUndefinedName, e.pos);
    }
    std::vector<Value> args;
    args.reserve(e.children.size());
    for (const Expr& arg : e.children) args.push_back(Eval(arg, frame));
    if (builtin) return EvalBuiltin(e, std::move(args));

    const FunctionDecl& fn = *it->second;
    if (fn.params.size() != args.size())
      Raise(ErrorKind::kArityMismatch, e.pos);
    if (depth_ >= kMaxCallDepth) Raise(ErrorKind::kTimeout, e.pos);
    Frame callee;
    for (std::size_t i = 0; i < args.size(); ++i) {
      callee.Define(fn.params[i], std::move(args[i]));
    }
    ++depth_;
    return_value_ = Value::Null();
    Flow flow = ExecBlock(fn.body, callee);
    --depth_;
    Value result = flow == Flow::kReturn ? std::move(return_value_) : Value();
    return_value_ = Value::Null();
    return result;
  }

  [[noreturn]] void Fail(const SourcePos& pos, std::string expected,
                         std::string actual, bool from_expect_fail = false) {
    throw FailureSignal{
        {pos, std::move(expected), std::move(actual), from_expect_fail}};
  }

  Flow Exec(const Stmt& s, Frame& frame) {
    Charge(s.pos);
    if (depth_ > 0) coverage_.insert({s.pos.file, s.pos.line});
    switch (s.kind) {
      case StmtKind::kLet:
        frame.Define(s.name, Eval(s.exprs[0], frame));
        return Flow::kNormal;
      case StmtKind::kAssign: {
        Value v = Eval(s.exprs[0], frame);
        Value* slot = frame.Find(s.name);
        if (slot == nullptr) Raise(ErrorKind::kUndefinedName, s.pos);
        *slot = std::move(v);
        return Flow::kNormal;
      }
      case StmtKind::kExpr: Eval(s.exprs[0], frame); return Flow::kNormal;
      case StmtKind::kReturn:
        return_value_ = s.exprs.empty() ? Value() : Eval(s.exprs[0], frame);
        return Flow::kReturn;
      case StmtKind::kIf:
        if (Truth(s.exprs[0], frame)) return ExecBlock(s.body, frame);
        if (s.has_else) return ExecBlock(s.else_body, frame);
        return Flow::kNormal;
      case StmtKind::kWhile:
        while (Truth(s.exprs[0], frame)) {
          if (ExecBlock(s.body, frame) == Flow::kReturn) return Flow::kReturn;
        }
        return Flow::kNormal;
      case StmtKind::kThrow: {
        Value msg = Eval(s.exprs[0], frame);
        RuntimeError err;
        err.kind = ErrorKind::kUserThrow;
        err.thrown_kind = s.name;
        err.message = CanonicalText(msg);
        err.pos = s.pos;
        throw ErrorSignal{std::move(err)};
      }
      case StmtKind::kAssertEq: {
        Value expected = Eval(s.exprs[0], frame);
        Value actual = Eval(s.exprs[1], frame);
        if (!ValuesEqual(expected, actual)) {
          Fail(s.pos, DisplayText(expected), DisplayText(actual));
        }
        return Flow::kNormal;
      }
      case StmtKind::kAssertTrue:
      case StmtKind::kAssertFalse: {
        Value v = Eval(s.exprs[0], frame);
        bool want = s.kind == StmtKind::kAssertTrue;
        if (!v.is_bool() || v.as_bool() != want) {
          Fail(s.pos, want ? "true" : "false", DisplayText(v));
        }
        return Flow::kNormal;
      }
      case StmtKind::kAssertNull: {
        Value v = Eval(s.exprs[0], frame);
        if (!v.is_null()) Fail(s.pos, "null", DisplayText(v));
        return Flow::kNormal;
      }
      case StmtKind::kExpectFail: return ExecExpectFail(s, frame);
    }
    return Flow::kNormal;
  }

  Flow ExecExpectFail(const Stmt& s, Frame& frame) {
    Value message = Eval(s.exprs[0], frame);
    std::string expected = s.name + ": " + DisplayText(message);
    try {
      ExecBlock(s.body, frame);
    } catch (ErrorSignal& sig) {
      if (sig.error.kind == ErrorKind::kTimeout) throw;
      if (sig.error.KindText() == s.name &&
          ValuesEqual(message, sig.error.MessageValue())) {
        return Flow::kNormal;
      }
      Fail(s.pos, expected, sig.error.Describe(), true);
    }
    Fail(s.pos, expected, "no error", true);
  }

  const Interpreter::Index& index_;
  Fuel fuel_;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
  Value return_value_;
  Coverage coverage_;
};

// Anchor for a top-level statement's observation, or nullopt when the
// statement has nothing to observe.
std::optional<Expr> AnchorFor(const Stmt& s) {
  if (s.kind == StmtKind::kLet) return Expr::Var(s.name, s.pos);
  if (s.kind == StmtKind::kExpr) return s.exprs[0];
  return std::nullopt;
}

}  // namespace

Interpreter::Interpreter(const Program& program)
    : index_(std::make_unique<Index>()) {
  for (const auto& [file, decls] : program.files) {
    for (const Decl& d : decls) {
      if (const auto* r = std::get_if<RecordDecl>(&d)) {
        index_->records.emplace(r->name, std::make_shared<const RecordLayout>(
                                             RecordLayout{r->name, r->fields}));
      } else {
        const auto& f = std::get<FunctionDecl>(d);
        index_->functions.emplace(f.name, &f);
      }
    }
  }
}

Interpreter::~Interpreter() = default;

TestOutcome Interpreter::Execute(const TestDecl& test, Fuel fuel) const {
  TestOutcome out;
  Run run(*index_, fuel);
  Frame frame;
  try {
    run.ExecBlock(test.body, frame);
  } catch (ErrorSignal& sig) {
    out.status = Status::kError;
    out.error = std::move(sig.error);
  } catch (FailureSignal& sig) {
    out.status = Status::kAssertionFailure;
    out.failure = std::move(sig.failure);
  }
  out.coverage = std::move(run.coverage());
  out.steps_used = run.steps();
  return out;
}

ObservationLog Interpreter::ExecuteInstrumented(const TestDecl& stripped_test,
                                                Fuel fuel) const {
  ObservationLog log;
  Run run(*index_, fuel);
  Frame frame;
  for (std::size_t i = 0; i < stripped_test.body.size(); ++i) {
    const Stmt& s = stripped_test.body[i];
    try {
      std::optional<Value> observed;
      if (s.kind == StmtKind::kExpr) {
        observed = run.TopLevelValue(s, frame);
        if (observed->is_null()) observed.reset();
      } else if (run.TopLevel(s, frame) == Flow::kReturn) {
        break;
      } else if (s.kind == StmtKind::kLet) {
        observed = *frame.Find(s.name);
      }
      if (observed) {
        log.entries.push_back({i, *AnchorFor(s), Snapshot(*observed)});
      }
    } catch (ErrorSignal& sig) {
      log.terminal = std::move(sig.error);
      log.terminal_statement = i;
      break;
    } catch (FailureSignal&) {
      log.assertion_failed = true;
      break;
    }
  }
  log.steps_used = run.steps();
  return log;
}

TestOutcome ExecuteTest(const Program& program, const TestDecl& test,
                        Fuel fuel) {
  return Interpreter(program).Execute(test, fuel);
}

ObservationLog ExecuteInstrumented(const Program& program,
                                   const TestDecl& stripped_test, Fuel fuel) {
  return Interpreter(program).ExecuteInstrumented(stripped_test, fuel);
}

SuiteOutcomes RunSuite(const Program& program, const TestSuite& suite,
                       Fuel fuel) {
  Interpreter interp(program);
  SuiteOutcomes out;
  out.reserve(suite.tests.size());
  for (const TestDecl& t : suite.tests) {
    out.emplace_back(t.name, interp.Execute(t, fuel));
  }
  return out;
}

std::map<std::string, Coverage> CoverageMap(const SuiteOutcomes& outcomes) {
  std::map<std::string, Coverage> out;
  for (const auto& [name, outcome] : outcomes) out[name] = outcome.coverage;
  return out;
}

}  // namespace ampdiff
