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
#include <string>
#include <vector>

#include "ampdiff/commit_pair.h"
#include "ampdiff/interpreter.h"
#include "ampdiff/parser.h"
#include "ampdiff/pipeline.h"
#include "ampdiff/render.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ampdiff {
namespace {

using testing::ParseP;
using testing::ParseT;

std::string StripText(const std::string& test) {
  return RenderBody(StripAssertions(ParseT(test)).body);
}

bool HasAssertion(const std::vector<Stmt>& body) {
  for (const Stmt& s : body) {
    switch (s.kind) {
      case StmtKind::kAssertEq:
      case StmtKind::kAssertTrue:
      case StmtKind::kAssertFalse:
      case StmtKind::kAssertNull:
      case StmtKind::kExpectFail: return true;
      default: break;
    }
    if (HasAssertion(s.body) || HasAssertion(s.else_body)) return true;
  }
  return false;
}

TEST(StripAssertionsTest, HoistsActual) {
  EXPECT_EQ(RenderBody(ParseT("test t { let _obs0 = compute(x); }").body),
            StripText("test t { assert_eq(1, compute(x)); }"));
}

TEST(StripAssertionsTest, AssertionOnlyBody) {
  EXPECT_EQ(RenderBody(ParseT("test t { let _obs0 = f(); let _obs1 = g(); "
                              "let _obs2 = h(); }")
                           .body),
            StripText("test t { assert_true(f()); assert_false(g()); "
                      "assert_null(h()); }"));
}

TEST(StripAssertionsTest, UnwrapsExpectFail) {
  EXPECT_EQ(RenderBody(ParseT("test t { f(); }").body),
            StripText("test t { expect_fail(\"E\", null) { f(); } }"));
}

TEST(StripAssertionsTest, KeepsOtherStatementsInOrder) {
  EXPECT_EQ(RenderBody(ParseT("test t { let a = 1; g(a); let _obs0 = f(a); "
                              "a = 2; }")
                           .body),
            StripText("test t { let a = 1; g(a); assert_eq(3, f(a)); "
                      "a = 2; }"));
}

TEST(StripAssertionsTest, DropsAssertionsOnObservedValues) {
  EXPECT_EQ(RenderBody(ParseT("test t { let b = new Bar(22); }").body),
            StripText("test t { let b = new Bar(22); assert_eq(22, b.n); "
                      "assert_eq(\"Bar{n=22}\", str(b)); }"));
  // After an assignment the earlier observation is stale.
  EXPECT_EQ(
      RenderBody(ParseT("test t { let b = 1; b = 2; let _obs0 = b; }").body),
      StripText("test t { let b = 1; b = 2; assert_eq(2, b); }"));
}

TEST(StripAssertionsTest, ContinuesObservationNumbering) {
  EXPECT_EQ(
      RenderBody(ParseT("test t { let _obs4 = f(); let _obs5 = g(); }").body),
      StripText("test t { let _obs4 = f(); assert_true(g()); }"));
}

Observation Obs(const std::string& anchor, const Value& v) {
  Observation o;
  o.anchor = Expr::Var(anchor);
  o.snapshot = Snapshot(v);
  return o;
}

std::vector<std::string> Rendered(const std::vector<Stmt>& stmts) {
  std::vector<std::string> out;
  for (const Stmt& s : stmts) {
    std::string text = Render(s);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    out.push_back(text);
  }
  return out;
}

TEST(GenerateAssertionsTest, Scalars) {
  EXPECT_EQ(std::vector<std::string>{"assert_eq(0, read);"},
            Rendered(GenerateAssertions(Obs("read", Value::Int(0)))));
  EXPECT_EQ(std::vector<std::string>{"assert_eq(\"a\\\"b\", s);"},
            Rendered(GenerateAssertions(Obs("s", Value::Str("a\"b")))));
  EXPECT_EQ(std::vector<std::string>{"assert_true(b);"},
            Rendered(GenerateAssertions(Obs("b", Value::Bool(true)))));
  EXPECT_EQ(std::vector<std::string>{"assert_null(n);"},
            Rendered(GenerateAssertions(Obs("n", Value::Null()))));
  Observation field;
  field.anchor = Expr::Field(Expr::Var("b"), "flag");
  field.snapshot = Snapshot(Value::Bool(false));
  EXPECT_EQ(std::vector<std::string>{"assert_false(b.flag);"},
            Rendered(GenerateAssertions(field)));
}

TEST(GenerateAssertionsTest, RecordFieldsAndText) {
  Program p = ParseP("record Bar { n }");
  TestSuite suite = ParseTests("test t { let b = new Bar(22); }", "t.slt");
  Interpreter pre(p);
  ObservationLog log = pre.ExecuteInstrumented(suite.tests[0]);
  ASSERT_EQ(1u, log.entries.size());
  EXPECT_EQ((std::vector<std::string>{"assert_eq(22, b.n);",
                                      "assert_eq(\"Bar{n=22}\", str(b));"}),
            Rendered(GenerateAssertions(log.entries[0])));
}

TEST(AmplifyAssertionsTest, RecordSeed) {
  Program p =
      ParseP("record Bar { n }\nfn make(k) {\n    return new Bar(k);\n}\n");
  Interpreter pre(p);
  TestDecl seed = ParseT("test build { let b = make(22); assert_true(true); }");
  std::vector<AmplifiedTest> out = AmplifyAssertions(pre, seed);
  ASSERT_EQ(1u, out.size());
  EXPECT_EQ("build_amp", out[0].name());
  EXPECT_EQ("build", out[0].origin);
  EXPECT_TRUE(out[0].lineage.empty());
  EXPECT_EQ(
      RenderBody(ParseT("test x { let b = make(22); assert_eq(22, b.n); "
                        "assert_eq(\"Bar{n=22}\", str(b)); let _obs0 = true; "
                        "assert_true(_obs0); }")
                     .body),
      RenderBody(out[0].test.body));
  EXPECT_TRUE(pre.Execute(out[0].test).passed());
}

TEST(AmplifyAssertionsTest, ThrowingBodyBecomesExpectFail) {
  Program p = ParseP(
      "fn parse(s) {\n    throw \"Syntax\", \"Expecting number, got: \" + "
      "s;\n}\n");
  Interpreter pre(p);
  TestDecl seed =
      ParseT("test reads { let a = 1; let v = parse(\"STRING\"); let w = 2; }");
  std::vector<AmplifiedTest> out = AmplifyAssertions(pre, seed);
  ASSERT_EQ(1u, out.size());
  EXPECT_EQ("reads_failAssert", out[0].name());
  EXPECT_EQ(
      RenderBody(
          ParseT("test x { expect_fail(\"Syntax\", \"Expecting number, got: "
                 "STRING\") { let a = 1; let v = parse(\"STRING\"); } }")
              .body),
      RenderBody(out[0].test.body));
  EXPECT_TRUE(pre.Execute(out[0].test).passed());
}

TEST(AmplifyAssertionsTest, BuiltinErrorHasNullMessage) {
  Program p = ParseP("fn f(x) {\n    return x + 1;\n}\n");
  Interpreter pre(p);
  std::vector<AmplifiedTest> out =
      AmplifyAssertions(pre, ParseT("test t { f(null); }"));
  ASSERT_EQ(1u, out.size());
  EXPECT_EQ(
      RenderBody(
          ParseT("test x { expect_fail(\"TypeError\", null) { f(null); } }")
              .body),
      RenderBody(out[0].test.body));
}

TEST(AmplifyAssertionsTest, EmptyBody) {
  Program p = ParseP("fn f() {\n    return 1;\n}\n");
  Interpreter pre(p);
  std::vector<AmplifiedTest> out = AmplifyAssertions(pre, ParseT("test t { }"));
  ASSERT_EQ(1u, out.size());
  EXPECT_TRUE(out[0].test.body.empty());
  EXPECT_TRUE(pre.Execute(out[0].test).passed());
}

TEST(AmplifyAssertionsTest, TimeoutDiscarded) {
  Program p = ParseP("fn f() {\n    while true {\n    }\n}\n");
  Interpreter pre(p);
  EXPECT_TRUE(AmplifyAssertions(pre, ParseT("test t { f(); }"), 1000).empty());
}

TEST(AmplifyAssertionsTest, RenamesKeepBaseName) {
  EXPECT_EQ("t", BaseName("t_amp"));
  EXPECT_EQ("t", BaseName("t_failAssert"));
  EXPECT_EQ("t_str_null3", BaseName("t_str_null3_amp"));
  EXPECT_EQ("_amp", BaseName("_amp"));
}

TEST(AmplifyAssertionsPropertyTest, CorpusSeeds) {
  for (const auto& dir : CorpusCases(testing::CorpusDir())) {
    CommitPair pair = LoadCommitPair(dir);
    Interpreter pre(pair.pre.program);
    for (const TestDecl& seed : pair.pre.suite.tests) {
      SCOPED_TRACE(seed.name);
      EXPECT_FALSE(HasAssertion(StripAssertions(seed).body));
      std::vector<AmplifiedTest> first = AmplifyAssertions(pre, seed);
      std::vector<AmplifiedTest> again = AmplifyAssertions(pre, seed);
      ASSERT_EQ(first.size(), again.size());
      for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_EQ(first[i].name(), again[i].name());
        EXPECT_EQ(Render(first[i].test), Render(again[i].test));
        EXPECT_TRUE(pre.Execute(first[i].test).passed());
        // Rendered output re-parses to the same test.
        EXPECT_EQ(Render(first[i].test), Render(Canonicalize(first[i].test)));
      }
    }
  }
}

TEST(AmplifyAssertionsPropertyTest, RandomProgramsPassOnPre) {
  testing::ProgramGenerator gen(5);
  int amplified = 0;
  for (int trial = 0; trial < 300; ++trial) {
    testing::ProgramGenerator::Generated g = gen.Next();
    Program program = ParseProgram(g.program, "g.sl");
    Interpreter pre(program);
    for (const TestDecl& t : ParseTests(g.tests, "g.slt").tests) {
      TestDecl stripped = StripAssertions(t);
      EXPECT_FALSE(HasAssertion(stripped.body));
      for (const AmplifiedTest& a : AmplifyAssertions(pre, t, 20000)) {
        ++amplified;
        ASSERT_TRUE(pre.Execute(a.test, 20000).passed()) << Render(a.test);
        std::vector<AmplifiedTest> again = AmplifyAssertions(pre, t, 20000);
        ASSERT_EQ(1u, again.size());
        EXPECT_EQ(Render(a.test), Render(again[0].test));
      }
    }
  }
  EXPECT_GT(amplified, 100);
}

}  // namespace
}  // namespace ampdiff
