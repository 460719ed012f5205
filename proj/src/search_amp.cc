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

#include "ampdiff/search_amp.h"

#include <array>
#include <limits>
#include <set>

#include "ampdiff/render.h"

namespace ampdiff {
namespace {

constexpr std::array<TransformOperator, 15> kRegistry = {{
    {"num_add1", OperatorTarget::kInt, 0},
    {"num_sub1", OperatorTarget::kInt, 1},
    {"num_zero", OperatorTarget::kInt, 2},
    {"num_max", OperatorTarget::kInt, 3},
    {"num_min", OperatorTarget::kInt, 4},
    {"bool_negate", OperatorTarget::kBool, 5},
    {"str_existing", OperatorTarget::kStr, 6},
    {"str_separator", OperatorTarget::kStr, 7},
    {"str_add_char", OperatorTarget::kStr, 8},
    {"str_remove_char", OperatorTarget::kStr, 9},
    {"str_replace_char", OperatorTarget::kStr, 10},
    {"str_random", OperatorTarget::kStr, 11},
    {"str_null", OperatorTarget::kStr, 12},
    {"stmt_duplicate", OperatorTarget::kCallStatement, 13},
    {"stmt_remove", OperatorTarget::kCallStatement, 14},
}};

OperatorTarget TargetFor(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::kInt: return OperatorTarget::kInt;
    case LiteralKind::kBool: return OperatorTarget::kBool;
    case LiteralKind::kStr: return OperatorTarget::kStr;
  }
  return OperatorTarget::kInt;
}

// Strings other than `own` that str_existing may pick, in pool order.
std::vector<std::string> OtherStrings(const std::vector<std::string>& pool,
                                      const std::string& own) {
  std::vector<std::string> out;
  for (const std::string& s : pool) {
    if (s != own) out.push_back(s);
  }
  return out;
}

bool Applicable(const TransformOperator& op, const Expr& literal,
                const std::vector<std::string>& pool) {
  if (op.id == "str_existing") {
    return !OtherStrings(pool, literal.text).empty();
  }
  if (op.id == "str_remove_char" || op.id == "str_replace_char" ||
      op.id == "str_random") {
    return !literal.text.empty();
  }
  return true;
}

void CollectCallStatements(const std::vector<Stmt>& body, std::size_t offset,
                           NodePath& path, std::vector<NodePath>& out) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    const Stmt& s = body[i];
    path.push_back(offset + i);
    if (s.kind == StmtKind::kExpr && s.exprs[0].kind == ExprKind::kCall) {
      out.push_back(path);
    }
    CollectCallStatements(s.body, s.exprs.size(), path, out);
    CollectCallStatements(s.else_body, s.exprs.size() + s.body.size(), path,
                          out);
    path.pop_back();
  }
}

void CollectStrings(const Expr& e, std::set<std::string>& seen,
                    std::vector<std::string>& out) {
  if (e.kind == ExprKind::kStrLit && seen.insert(e.text).second) {
    out.push_back(e.text);
  }
  for (const Expr& c : e.children) CollectStrings(c, seen, out);
}

void CollectStrings(const std::vector<Stmt>& body, std::set<std::string>& seen,
                    std::vector<std::string>& out) {
  for (const Stmt& s : body) {
    if (s.kind == StmtKind::kThrow || s.kind == StmtKind::kExpectFail) {
      if (seen.insert(s.name).second) out.push_back(s.name);
    }
    for (const Expr& e : s.exprs) CollectStrings(e, seen, out);
    CollectStrings(s.body, seen, out);
    CollectStrings(s.else_body, seen, out);
  }
}

char RandomChar(Chooser& chooser, char avoid = '\0') {
  std::string choices;
  for (char c : kRandomAlphabet) {
    if (c != avoid) choices += c;
  }
  return choices[chooser.Below(choices.size())];
}

Expr TransformLiteral(const Expr& literal, std::string_view op,
                      const std::vector<std::string>& pool, Chooser& chooser) {
  const SourcePos& pos = literal.pos;
  if (literal.kind == ExprKind::kIntLit) {
    auto u = static_cast<std::uint64_t>(literal.int_value);
    if (op == "num_add1")
      return Expr::Int(static_cast<std::int64_t>(u + 1), pos);
    if (op == "num_sub1")
      return Expr::Int(static_cast<std::int64_t>(u - 1), pos);
    if (op == "num_zero") return Expr::Int(0, pos);
    if (op == "num_max") {
      return Expr::Int(std::numeric_limits<std::int64_t>::max(), pos);
    }
    return Expr::Int(std::numeric_limits<std::int64_t>::min(), pos);
  }
  if (literal.kind == ExprKind::kBoolLit) {
    return Expr::Bool(!literal.bool_value, pos);
  }
  std::string s = literal.text;
  if (op == "str_existing") {
    std::vector<std::string> others = OtherStrings(pool, s);
    return Expr::Str(others[chooser.Below(others.size())], pos);
  }
  if (op == "str_separator") {
    return Expr::Str(std::string(kSeparators[chooser.Below(3)]), pos);
  }
  if (op == "str_add_char") {
    std::size_t at = chooser.Below(s.size() + 1);
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(at), RandomChar(chooser));
    return Expr::Str(std::move(s), pos);
  }
  if (op == "str_remove_char") {
    s.erase(chooser.Below(s.size()), 1);
    return Expr::Str(std::move(s), pos);
  }
  if (op == "str_replace_char") {
    std::size_t at = chooser.Below(s.size());
    s[at] = RandomChar(chooser, s[at]);
    return Expr::Str(std::move(s), pos);
  }
  if (op == "str_random") {
    for (char& c : s) c = RandomChar(chooser);
    return Expr::Str(std::move(s), pos);
  }
  return Expr::Null(pos);  // str_null
}

std::string Trimmed(std::string s) {
  std::size_t b = s.find_first_not_of(' ');
  std::size_t e = s.find_last_not_of(" \n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::span<const TransformOperator> OperatorRegistry() { return kRegistry; }

const TransformOperator* FindOperator(std::string_view id) {
  for (const TransformOperator& op : kRegistry) {
    if (op.id == id) return &op;
  }
  return nullptr;
}

std::vector<std::string> StringPool(const TestSuite& suite) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const TestDecl& t : suite.tests) CollectStrings(t.body, seen, out);
  return out;
}

std::vector<Candidate> EnumerateCandidates(
    const TestDecl& test, const std::vector<std::string>& string_pool) {
  std::vector<Candidate> out;
  for (const LiteralSite& site : LiteralSites(test)) {
    OperatorTarget target = TargetFor(site.kind);
    for (const TransformOperator& op : kRegistry) {
      if (op.target == target && Applicable(op, site.value, string_pool)) {
        out.push_back({site.path, &op});
      }
    }
  }
  std::vector<NodePath> calls;
  NodePath path;
  CollectCallStatements(test.body, 0, path, calls);
  for (const NodePath& p : calls) {
    for (const TransformOperator& op : kRegistry) {
      if (op.target == OperatorTarget::kCallStatement) out.push_back({p, &op});
    }
  }
  return out;
}

std::vector<Candidate> EnumerateCandidates(const TestDecl& test,
                                           const TestSuite& suite) {
  return EnumerateCandidates(test, StringPool(suite));
}

AmplifiedTest ApplyTransform(const AmplifiedTest& parent,
                             const Candidate& candidate,
                             const std::vector<std::string>& string_pool,
                             Chooser& chooser, std::string name) {
  AmplifiedTest out = parent;
  out.test.name = std::move(name);
  TransformRecord record;
  record.op = std::string(candidate.op->id);
  record.site = ToString(candidate.site);

  if (candidate.op->target == OperatorTarget::kCallStatement) {
    std::size_t index = 0;
    std::vector<Stmt>* list = FindStmtList(out.test, candidate.site, &index);
    if (list == nullptr || (*list)[index].kind != StmtKind::kExpr ||
        (*list)[index].exprs[0].kind != ExprKind::kCall) {
      throw InvalidSite("no call statement at " + record.site);
    }
    std::string text = Trimmed(Render((*list)[index]));
    record.old_value = text;
    if (candidate.op->id == "stmt_duplicate") {
      Stmt copy = (*list)[index];
      list->insert(list->begin() + static_cast<std::ptrdiff_t>(index) + 1,
                   std::move(copy));
      record.new_value = text + " " + text;
    } else {
      list->erase(list->begin() + static_cast<std::ptrdiff_t>(index));
    }
  } else {
    Expr* literal = FindExpr(out.test, candidate.site);
    bool ok =
        literal != nullptr && ((candidate.op->target == OperatorTarget::kInt &&
                                literal->kind == ExprKind::kIntLit) ||
                               (candidate.op->target == OperatorTarget::kBool &&
                                literal->kind == ExprKind::kBoolLit) ||
                               (candidate.op->target == OperatorTarget::kStr &&
                                literal->kind == ExprKind::kStrLit));
    if (!ok || !Applicable(*candidate.op, *literal, string_pool)) {
      throw InvalidSite("no suitable literal at " + record.site);
    }
    record.old_value = Render(*literal);
    *literal =
        TransformLiteral(*literal, candidate.op->id, string_pool, chooser);
    record.new_value = Render(*literal);
  }
  out.lineage.push_back(std::move(record));
  return out;
}

std::string VariantName(const std::string& parent, std::string_view op_id,
                        std::size_t counter) {
  return BaseName(parent) + "_" + std::string(op_id) + std::to_string(counter);
}

namespace {

// Test names become file names when emitted.
constexpr std::size_t kMaxNameLength = 200;

void SearchFromSeed(const Interpreter& pre, const Interpreter& post,
                    const TestDecl& seed, const std::vector<std::string>& pool,
                    const SearchConfig& config, SearchResult& result) {
  std::vector<AmplifiedTest> current;
  current.push_back({seed, {}, seed.name});
  std::set<std::string> seen;
  std::size_t counter = 0;

  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    struct PoolEntry {
      std::size_t parent;
      Candidate candidate;
    };
    std::vector<PoolEntry> entries;
    for (std::size_t p = 0; p < current.size(); ++p) {
      for (Candidate& c : EnumerateCandidates(current[p].test, pool)) {
        entries.push_back({p, std::move(c)});
      }
    }
    RngStream stream = RngStream::ForKey(config.seed, seed.name,
                                         static_cast<std::uint64_t>(iteration));
    std::vector<std::size_t> chosen =
        stream.Sample(entries.size(), config.max_variants);

    std::vector<AmplifiedTest> next;
    for (std::size_t k : chosen) {
      const PoolEntry& entry = entries[k];
      RngStream choices = stream.Fork(k);
      const AmplifiedTest& parent = current[entry.parent];
      std::string name =
          VariantName(parent.name(), entry.candidate.op->id, ++counter);
      if (name.size() > kMaxNameLength) {
        // Long chains fall back to the seed name; the counter keeps it unique.
        name = VariantName(seed.name, entry.candidate.op->id, counter);
      }
      AmplifiedTest variant =
          ApplyTransform(parent, entry.candidate, pool, choices, name);
      for (AmplifiedTest& amplified :
           AmplifyAssertions(pre, variant, config.fuel)) {
        if (!seen.insert(RenderBody(amplified.test.body)).second) continue;
        if (!post.Execute(amplified.test, config.fuel).passed()) {
          result.detectors.push_back(amplified);
        }
        result.variants.push_back(amplified);
        next.push_back(std::move(amplified));
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }
}

}  // namespace

SearchResult Sbampl(const Interpreter& pre, const Interpreter& post,
                    const std::vector<TestDecl>& seeds, const TestSuite& suite,
                    const SearchConfig& config) {
  std::vector<std::string> pool = StringPool(suite);
  SearchResult result;
  for (const TestDecl& seed : seeds) {
    SearchFromSeed(pre, post, seed, pool, config, result);
  }
  return result;
}

}  // namespace ampdiff
