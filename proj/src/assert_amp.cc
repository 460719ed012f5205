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

#include "ampdiff/assert_amp.h"

#include <set>

#include "ampdiff/parser.h"
#include "ampdiff/render.h"

namespace ampdiff {
namespace {

constexpr std::string_view kObsPrefix = "_obs";

// Highest K used by an existing `let _obsK`, or -1.
long MaxObsIndex(const std::vector<Stmt>& body) {
  long best = -1;
  for (const Stmt& s : body) {
    if (s.kind == StmtKind::kLet && s.name.rfind(kObsPrefix, 0) == 0) {
      std::string digits = s.name.substr(kObsPrefix.size());
      if (!digits.empty() &&
          digits.find_first_not_of("0123456789") == std::string::npos &&
          digits.size() < 10) {
        best = std::max(best, std::stol(digits));
      }
    }
    best = std::max(best, MaxObsIndex(s.body));
    best = std::max(best, MaxObsIndex(s.else_body));
  }
  return best;
}

class Stripper {
 public:
  explicit Stripper(long next) : next_(next) {}

  std::vector<Stmt> Strip(const std::vector<Stmt>& body, bool top_level) {
    std::vector<Stmt> out;
    for (const Stmt& s : body) StripInto(s, top_level, out);
    return out;
  }

 private:
  bool Derived(const Expr& e) const {
    if (anchors_.count(Render(e)) > 0) return true;
    if (e.kind == ExprKind::kField || e.kind == ExprKind::kToStr) {
      return Derived(e.children[0]);
    }
    return false;
  }

  void StripInto(const Stmt& s, bool top_level, std::vector<Stmt>& out) {
    switch (s.kind) {
      case StmtKind::kAssertEq:
      case StmtKind::kAssertTrue:
      case StmtKind::kAssertFalse:
      case StmtKind::kAssertNull: {
        const Expr& actual = s.exprs.back();
        if (Derived(actual)) return;
        std::string name = std::string(kObsPrefix) + std::to_string(next_++);
        out.push_back(Stmt::Let(name, actual, s.pos));
        if (top_level) anchors_.insert(name);
        return;
      }
      case StmtKind::kExpectFail:
        for (const Stmt& inner : s.body) StripInto(inner, top_level, out);
        return;
      default: break;
    }
    Stmt copy = s;
    copy.body = Strip(s.body, false);
    copy.else_body = Strip(s.else_body, false);
    if (s.kind == StmtKind::kAssign || s.kind == StmtKind::kIf ||
        s.kind == StmtKind::kWhile ||
        (s.kind == StmtKind::kLet && anchors_.count(s.name) > 0)) {
      // Earlier observations may no longer describe the current values.
      anchors_.clear();
    }
    if (top_level && s.kind == StmtKind::kLet) {
      anchors_.insert(s.name);
    } else if (top_level && s.kind == StmtKind::kExpr) {
      anchors_.insert(Render(s.exprs[0]));
    }
    out.push_back(std::move(copy));
  }

  long next_;
  std::set<std::string> anchors_;
};

Expr LiteralFor(const Value& v) {
  if (v.is_int()) return Expr::Int(v.as_int());
  if (v.is_str()) return Expr::Str(v.as_str());
  if (v.is_bool()) return Expr::Bool(v.as_bool());
  return Expr::Null();
}

void ScalarAssertion(const Value& v, const Expr& anchor,
                     std::vector<Stmt>& out) {
  if (v.is_bool()) {
    out.push_back(v.as_bool() ? Stmt::AssertTrue(anchor)
                              : Stmt::AssertFalse(anchor));
  } else if (v.is_null()) {
    out.push_back(Stmt::AssertNull(anchor));
  } else {
    out.push_back(Stmt::AssertEq(LiteralFor(v), anchor));
  }
}

void FieldAssertions(const ValueSnapshot& snap, const Expr& anchor,
                     std::vector<Stmt>& out) {
  for (const auto& [field, child] : snap.fields) {
    Expr access = Expr::Field(anchor, field);
    if (!child.is_record()) {
      ScalarAssertion(child.value, access, out);
    } else if (!child.elided) {
      FieldAssertions(child, access, out);
    }
  }
}

std::vector<AmplifiedTest> Amplify(const Interpreter& pre,
                                   const AmplifiedTest& input,
                                   const std::string& pass_name, Fuel fuel) {
  TestDecl stripped = StripAssertions(input.test);
  ObservationLog log = pre.ExecuteInstrumented(stripped, fuel);
  if (log.assertion_failed) return {};

  AmplifiedTest out;
  out.lineage = input.lineage;
  out.origin = input.origin;
  if (log.terminal) {
    if (log.terminal->kind == ErrorKind::kTimeout) return {};
    std::vector<Stmt> prefix(
        stripped.body.begin(),
        stripped.body.begin() +
            static_cast<std::ptrdiff_t>(log.terminal_statement + 1));
    out.test.name = BaseName(input.test.name) + kFailAssertSuffix;
    out.test.body.push_back(Stmt::ExpectFail(
        log.terminal->KindText(), LiteralFor(log.terminal->MessageValue()),
        std::move(prefix)));
  } else {
    out.test.name = pass_name;
    std::size_t next_obs = 0;
    for (std::size_t i = 0; i < stripped.body.size(); ++i) {
      out.test.body.push_back(stripped.body[i]);
      while (next_obs < log.entries.size() &&
             log.entries[next_obs].statement == i) {
        for (Stmt& a : GenerateAssertions(log.entries[next_obs])) {
          a.pos = stripped.body[i].pos;
          out.test.body.push_back(std::move(a));
        }
        ++next_obs;
      }
    }
  }
  out.test = Canonicalize(out.test);
  if (!pre.Execute(out.test, fuel).passed()) return {};
  return {std::move(out)};
}

}  // namespace

TestDecl StripAssertions(const TestDecl& test) {
  Stripper stripper(MaxObsIndex(test.body) + 1);
  TestDecl out;
  out.name = test.name;
  out.pos = test.pos;
  out.body = stripper.Strip(test.body, true);
  return out;
}

std::vector<Stmt> GenerateAssertions(const Observation& obs) {
  std::vector<Stmt> out;
  if (!obs.snapshot.is_record()) {
    ScalarAssertion(obs.snapshot.value, obs.anchor, out);
    return out;
  }
  FieldAssertions(obs.snapshot, obs.anchor, out);
  out.push_back(
      Stmt::AssertEq(Expr::Str(obs.snapshot.text), Expr::ToStr(obs.anchor)));
  return out;
}

std::string BaseName(const std::string& name) {
  for (std::string_view suffix :
       {std::string_view(kAmpSuffix), std::string_view(kFailAssertSuffix)}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name;
}

TestDecl Canonicalize(const TestDecl& test) {
  TestSuite suite = ParseTests(Render(test), test.name + ".slt");
  return std::move(suite.tests.front());
}

std::vector<AmplifiedTest> AmplifyAssertions(const Interpreter& pre,
                                             const AmplifiedTest& input,
                                             Fuel fuel) {
  return Amplify(pre, input, input.test.name, fuel);
}

std::vector<AmplifiedTest> AmplifyAssertions(const Interpreter& pre,
                                             const TestDecl& seed, Fuel fuel) {
  AmplifiedTest input;
  input.test = seed;
  input.origin = seed.name;
  return Amplify(pre, input, seed.name + kAmpSuffix, fuel);
}

}  // namespace ampdiff
