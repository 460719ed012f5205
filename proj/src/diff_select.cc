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

#include "ampdiff/diff_select.h"

#include <algorithm>

#include "ampdiff/render.h"

namespace ampdiff {

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

FileDiff DiffLines(const std::vector<std::string>& pre,
                   const std::vector<std::string>& post) {
  const std::size_t n = pre.size();
  const std::size_t m = post.size();
  // lcs[i][j] = LCS length of pre[i..] and post[j..].
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = pre[i] == post[j] ? lcs[i + 1][j + 1] + 1
                                    : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }

  FileDiff diff;
  Hunk current;
  bool open = false;
  int last_matched_pre = 0;
  auto close = [&] {
    if (open) diff.hunks.push_back(std::move(current));
    current = Hunk{};
    open = false;
  };
  auto touch = [&] {
    if (!open) {
      current.anchor = last_matched_pre;
      open = true;
    }
  };

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && pre[i] == post[j] &&
        lcs[i][j] == lcs[i + 1][j + 1] + 1) {
      close();
      last_matched_pre = static_cast<int>(i + 1);
      ++i;
      ++j;
    } else if (j == m || (i < n && lcs[i + 1][j] >= lcs[i][j + 1])) {
      touch();
      current.deleted.push_back(static_cast<int>(i + 1));
      diff.deleted.insert(static_cast<int>(i + 1));
      ++i;
    } else {
      touch();
      current.added.push_back(static_cast<int>(j + 1));
      diff.added.insert(static_cast<int>(j + 1));
      ++j;
    }
  }
  close();
  return diff;
}

LineDiff ComputeLineDiff(const Version& pre, const Version& post) {
  LineDiff out;
  std::set<std::string> files;
  for (const auto& [name, text] : pre.programs) files.insert(name);
  for (const auto& [name, text] : post.programs) files.insert(name);
  for (const std::string& name : files) {
    auto a = pre.programs.find(name);
    auto b = post.programs.find(name);
    std::vector<std::string> lines_a = a == pre.programs.end()
                                           ? std::vector<std::string>{}
                                           : SplitLines(a->second);
    std::vector<std::string> lines_b = b == post.programs.end()
                                           ? std::vector<std::string>{}
                                           : SplitLines(b->second);
    FileDiff d = DiffLines(lines_a, lines_b);
    if (!d.empty()) out.programs.emplace(name, std::move(d));
  }

  for (const TestDecl& t : post.suite.tests) {
    const TestDecl* old = pre.suite.Find(t.name);
    if (old == nullptr) {
      out.added_tests.insert(t.name);
    } else if (RenderBody(old->body) != RenderBody(t.body)) {
      out.modified_tests.insert(t.name);
    }
  }
  for (const TestDecl& t : pre.suite.tests) {
    if (post.suite.Find(t.name) == nullptr) out.removed_tests.insert(t.name);
  }
  return out;
}

namespace {

void CollectLines(const std::vector<Stmt>& body, std::set<LineRef>& out) {
  for (const Stmt& s : body) {
    out.insert({s.pos.file, s.pos.line});
    CollectLines(s.body, out);
    CollectLines(s.else_body, out);
  }
}

}  // namespace

std::set<LineRef> StatementLines(const Program& program) {
  std::set<LineRef> out;
  for (const auto& [file, decls] : program.files) {
    for (const Decl& d : decls) {
      if (const auto* f = std::get_if<FunctionDecl>(&d)) {
        CollectLines(f->body, out);
      }
    }
  }
  return out;
}

TargetSet TargetLines(const LineDiff& diff, const Program& pre) {
  std::set<LineRef> statements = StatementLines(pre);
  TargetSet targets;
  for (const auto& [file, fd] : diff.programs) {
    for (const Hunk& h : fd.hunks) {
      std::vector<int> touched =
          h.pure_insertion() ? std::vector<int>{h.anchor} : h.deleted;
      for (int line : touched) {
        LineRef ref{file, line};
        if (statements.count(ref) > 0) targets.lines.insert(ref);
      }
    }
  }
  if (targets.lines.empty()) throw EmptyDiff();
  targets.total_changed = targets.lines.size();
  return targets;
}

std::string DiffCoverage::ToString() const {
  // Round half up at the fourth decimal using integers only.
  std::size_t scaled = total == 0 ? 0 : (covered * 20000 + total) / (2 * total);
  std::string digits = std::to_string(scaled % 10000);
  digits.insert(0, 4 - digits.size(), '0');
  return std::to_string(scaled / 10000) + "." + digits;
}

DiffCoverage ComputeDiffCoverage(const std::map<std::string, Coverage>& suite,
                                 const TargetSet& targets) {
  if (targets.lines.empty() || targets.total_changed == 0) throw EmptyDiff();
  DiffCoverage out;
  out.total = targets.total_changed;
  for (const LineRef& line : targets.lines) {
    bool hit = std::any_of(suite.begin(), suite.end(), [&](const auto& entry) {
      return entry.second.count(line) > 0;
    });
    if (hit) ++out.covered;
  }
  return out;
}

std::vector<TestDecl> SelectTests(const TestSuite& pre_suite,
                                  const SuiteOutcomes& pre_outcomes,
                                  const TargetSet& targets,
                                  const LineDiff& diff) {
  std::vector<TestDecl> out;
  for (const TestDecl& t : pre_suite.tests) {
    if (diff.added_tests.count(t.name) > 0) continue;
    auto it = std::find_if(pre_outcomes.begin(), pre_outcomes.end(),
                           [&](const auto& o) { return o.first == t.name; });
    if (it == pre_outcomes.end() || !it->second.passed()) continue;
    const Coverage& cov = it->second.coverage;
    bool hits = std::any_of(targets.lines.begin(), targets.lines.end(),
                            [&](const LineRef& l) { return cov.count(l) > 0; });
    if (hits) out.push_back(t);
  }
  return out;
}

}  // namespace ampdiff
