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

#ifndef AMPDIFF_SEARCH_AMP_H_
#define AMPDIFF_SEARCH_AMP_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ampdiff/assert_amp.h"
#include "ampdiff/ast.h"
#include "ampdiff/interpreter.h"
#include "ampdiff/literal_sites.h"
#include "ampdiff/rng.h"

namespace ampdiff {

enum class OperatorTarget { kInt, kBool, kStr, kCallStatement };

struct TransformOperator {
  std::string_view id;
  OperatorTarget target;
  std::size_t order;  // position in the registry
};

// The fixed registry: five number operators, one boolean, seven string,
// two statement operators, in that order. See docs/operators.md.
std::span<const TransformOperator> OperatorRegistry();

const TransformOperator* FindOperator(std::string_view id);

// Characters drawn by the random-character string operators.
inline constexpr std::string_view kRandomAlphabet =
    "abcdefghijklmnopqrstuvwxyz0123456789/\\";

// Replacement values offered by str_separator.
inline constexpr std::string_view kSeparators[] = {" ", "/", "\\"};

struct Candidate {
  NodePath site;
  const TransformOperator* op = nullptr;
};

// Distinct string literal values of the suite in first-occurrence order;
// the pool for str_existing.
std::vector<std::string> StringPool(const TestSuite& suite);

// Every applicable (site, operator) pair: literal sites crossed with their
// operators, then expression-statement calls crossed with duplicate and
// remove. Site order major, registry order minor.
std::vector<Candidate> EnumerateCandidates(
    const TestDecl& test, const std::vector<std::string>& string_pool);

std::vector<Candidate> EnumerateCandidates(const TestDecl& test,
                                           const TestSuite& suite);

class InvalidSite : public std::runtime_error {
 public:
  explicit InvalidSite(const std::string& what) : std::runtime_error(what) {}
};

// Applies one operator. `name` becomes the new test's name; the lineage of
// `parent` is extended by one record. Throws InvalidSite if the site does
// not resolve to something the operator accepts.
AmplifiedTest ApplyTransform(const AmplifiedTest& parent,
                             const Candidate& candidate,
                             const std::vector<std::string>& string_pool,
                             Chooser& chooser, std::string name);

inline constexpr std::size_t kUnboundedVariants =
    std::numeric_limits<std::size_t>::max();

struct SearchConfig {
  int iterations = 3;
  std::uint64_t seed = 0;
  std::size_t max_variants = 50;  // per seed test and iteration
  Fuel fuel = kDefaultFuel;
};

struct SearchResult {
  // Variants that pass on pre and fail on post, in generation order.
  std::vector<AmplifiedTest> detectors;
  // Every amplified variant generated, in generation order.
  std::vector<AmplifiedTest> variants;
};

// Hill climbing from each seed: transform, re-amplify assertions against
// pre, keep the variants that fail on post, and feed all surviving
// variants into the next iteration.
SearchResult Sbampl(const Interpreter& pre, const Interpreter& post,
                    const std::vector<TestDecl>& seeds, const TestSuite& suite,
                    const SearchConfig& config);

// Name of a transformed test: the parent's base name, the operator id and
// a running counter.
std::string VariantName(const std::string& parent, std::string_view op_id,
                        std::size_t counter);

}  // namespace ampdiff

#endif  // AMPDIFF_SEARCH_AMP_H_
