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

#ifndef AMPDIFF_TESTS_TEST_UTIL_H_
#define AMPDIFF_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ampdiff/assert_amp.h"
#include "ampdiff/ast.h"
#include "ampdiff/detect.h"
#include "ampdiff/parser.h"
#include "ampdiff/render.h"
#include "ampdiff/rng.h"

namespace ampdiff::testing {

inline std::filesystem::path CorpusDir() { return AMPDIFF_CORPUS_DIR; }
inline std::filesystem::path DocsDir() { return AMPDIFF_DOCS_DIR; }

inline Program ParseP(const std::string& source,
                      const std::string& file = "m.sl") {
  return ParseProgram(source, file);
}

inline TestDecl ParseT(const std::string& source,
                       const std::string& file = "t.slt") {
  return ParseTests(source, file).tests.at(0);
}

inline std::set<std::string> Bodies(const std::vector<AmplifiedTest>& tests) {
  std::set<std::string> out;
  for (const AmplifiedTest& t : tests) out.insert(RenderBody(t.test.body));
  return out;
}

inline std::set<std::string> Bodies(const std::vector<Detector>& detectors) {
  std::set<std::string> out;
  for (const Detector& d : detectors) {
    out.insert(RenderBody(d.amplified.test.body));
  }
  return out;
}

// Replays a fixed list of choices; fails the test if asked for more or for
// an out-of-range value.
class ScriptedChooser : public Chooser {
 public:
  explicit ScriptedChooser(std::vector<std::uint64_t> script)
      : script_(std::move(script)) {}

  std::uint64_t Below(std::uint64_t n) override {
    bounds_.push_back(n);
    if (next_ >= script_.size() || script_[next_] >= n) {
      overrun_ = true;
      return 0;
    }
    return script_[next_++];
  }

  bool overrun() const { return overrun_; }
  const std::vector<std::uint64_t>& bounds() const { return bounds_; }

 private:
  std::vector<std::uint64_t> script_;
  std::size_t next_ = 0;
  bool overrun_ = false;
  std::vector<std::uint64_t> bounds_;
};

// Walks every path of a choice tree: after each run, Advance() moves to the
// next unexplored combination of answers.
class ExhaustiveChooser : public Chooser {
 public:
  std::uint64_t Below(std::uint64_t n) override {
    if (depth_ == path_.size()) path_.push_back({0, n});
    return path_[depth_++].first;
  }

  // False once every combination has been produced.
  bool Advance() {
    path_.resize(depth_);
    depth_ = 0;
    while (!path_.empty()) {
      auto& [value, bound] = path_.back();
      if (++value < bound) return true;
      path_.pop_back();
    }
    return false;
  }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;
  std::size_t depth_ = 0;
};

// Small random programs over integers: arithmetic (including division),
// branches, bounded and unbounded loops, calls, recursion and throws.
// Text is emitted one statement per line.
class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint64_t seed) : rng_(seed) {}

  struct Generated {
    std::string program;
    std::string tests;
  };

  Generated Next() {
    Generated g;
    functions_ = 1 + static_cast<int>(rng_.Below(3));
    for (int f = 0; f < functions_; ++f) g.program += Function(f);
    int tests = 1 + static_cast<int>(rng_.Below(2));
    for (int t = 0; t < tests; ++t) {
      g.tests += "test t" + std::to_string(t) + " {\n";
      int calls = 1 + static_cast<int>(rng_.Below(3));
      for (int c = 0; c < calls; ++c) {
        std::string call = "f" + std::to_string(rng_.Below(functions_)) + "(" +
                           Literal() + ", " + Literal() + ")";
        if (rng_.Below(2) == 0) {
          g.tests += "    let r" + std::to_string(c) + " = " + call + ";\n";
        } else {
          g.tests += "    " + call + ";\n";
        }
      }
      g.tests += "}\n\n";
    }
    return g;
  }

 private:
  std::string Literal() {
    return std::to_string(static_cast<std::int64_t>(rng_.Below(12)) - 3);
  }

  std::string Var() { return vars_[rng_.Below(vars_.size())]; }

  std::string Expr(int depth) {
    std::uint64_t pick = rng_.Below(depth <= 0 ? 2 : 5);
    switch (pick) {
      case 0: return Literal();
      case 1: return Var();
      case 2:
      case 3: {
        static const char* kOps[] = {"+", "-", "*", "/", "%"};
        return "(" + Expr(depth - 1) + " " + kOps[rng_.Below(5)] + " " +
               Expr(depth - 1) + ")";
      }
      default: {
        // Calls go to earlier functions, or rarely to the current one.
        int limit = current_ + (rng_.Below(8) == 0 ? 1 : 0);
        if (limit == 0) return Var();
        return "f" + std::to_string(rng_.Below(limit)) + "(" + Expr(depth - 1) +
               ", " + Expr(depth - 1) + ")";
      }
    }
  }

  std::string Cond() {
    static const char* kCmp[] = {"<", "<=", "==", "!=", ">", ">="};
    return Expr(1) + " " + kCmp[rng_.Below(6)] + " " + Expr(1);
  }

  void Block(int depth, int indent, std::string& out) {
    int count = 1 + static_cast<int>(rng_.Below(3));
    for (int i = 0; i < count; ++i) Statement(depth, indent, out);
  }

  void Statement(int depth, int indent, std::string& out) {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    std::uint64_t pick = rng_.Below(depth <= 0 ? 3 : 7);
    switch (pick) {
      case 0: {
        std::string name = "v" + std::to_string(next_var_++);
        out += pad + "let " + name + " = " + Expr(2) + ";\n";
        vars_.push_back(name);
        return;
      }
      case 1:
      case 2: {
        std::string target = vars_[rng_.Below(vars_.size())];
        if (target.rfind("i", 0) == 0) target = "a";
        out += pad + target + " = " + Expr(2) + ";\n";
        return;
      }
      case 3:
      case 4: {
        out += pad + "if " + Cond() + " {\n";
        std::size_t saved = vars_.size();
        Block(depth - 1, indent + 1, out);
        vars_.resize(saved);
        if (rng_.Below(2) == 0) {
          out += pad + "} else {\n";
          Block(depth - 1, indent + 1, out);
          vars_.resize(saved);
        }
        out += pad + "}\n";
        return;
      }
      case 5: {
        std::string counter = "i" + std::to_string(next_var_++);
        out += pad + "let " + counter + " = 0;\n";
        vars_.push_back(counter);
        std::string bound =
            rng_.Below(10) == 0 ? "true" : counter + " < " + Expr(1);
        out += pad + "while " + bound + " {\n";
        std::size_t saved = vars_.size();
        Block(depth - 1, indent + 1, out);
        vars_.resize(saved);
        out += pad + "    " + counter + " = " + counter + " + 1;\n";
        out += pad + "}\n";
        return;
      }
      default:
        out += pad + "if " + Cond() + " {\n";
        out += pad + "    throw \"Bad\", " + Expr(1) + ";\n";
        out += pad + "}\n";
        return;
    }
  }

  std::string Function(int index) {
    current_ = index;
    vars_ = {"a", "b"};
    std::string out = "fn f" + std::to_string(index) + "(a, b) {\n";
    Block(2, 1, out);
    out += "    return " + Expr(2) + ";\n}\n\n";
    return out;
  }

  RngStream rng_;
  int functions_ = 1;
  int current_ = 0;
  int next_var_ = 0;
  std::vector<std::string> vars_;
};

}  // namespace ampdiff::testing

#endif  // AMPDIFF_TESTS_TEST_UTIL_H_
