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

#ifndef AMPDIFF_VALUE_H_
#define AMPDIFF_VALUE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ampdiff {

// Name and field order of a record type, shared by all of its values.
struct RecordLayout {
  std::string name;
  std::vector<std::string> fields;
};

class Value;

struct RecordValue {
  std::shared_ptr<const RecordLayout> layout;
  // Immutable once built, so values can share it.
  std::shared_ptr<const std::vector<Value>> fields;
};

struct NullValue {
  bool operator==(const NullValue&) const = default;
};

class Value {
 public:
  Value() = default;
  static Value Int(std::int64_t v) { return Value(v); }
  static Value Bool(bool v) { return Value(v); }
  static Value Str(std::string v) { return Value(std::move(v)); }
  static Value Null() { return Value(); }
  static Value Record(std::shared_ptr<const RecordLayout> layout,
                      std::vector<Value> fields);

  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_str() const { return std::holds_alternative<std::string>(v_); }
  bool is_null() const { return std::holds_alternative<NullValue>(v_); }
  bool is_record() const { return std::holds_alternative<RecordValue>(v_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }
  const std::string& as_str() const { return std::get<std::string>(v_); }
  const RecordValue& as_record() const { return std::get<RecordValue>(v_); }

  const char* TypeName() const;

 private:
  explicit Value(std::int64_t v) : v_(v) {}
  explicit Value(bool v) : v_(v) {}
  explicit Value(std::string v) : v_(std::move(v)) {}
  explicit Value(RecordValue v) : v_(std::move(v)) {}

  std::variant<NullValue, std::int64_t, bool, std::string, RecordValue> v_;
};

// Records nested deeper than this are rendered and snapshotted as
// "Name{...}". The outermost value is at depth 1.
inline constexpr int kSnapshotDepth = 3;

// Structural deep equality; values of different kinds are unequal.
bool ValuesEqual(const Value& a, const Value& b);

// Text form used by str(): decimal ints, true/false, null, strings
// verbatim, records as Name{f1=..., f2=...}.
std::string CanonicalText(const Value& v);

// Like CanonicalText but strings are quoted, so "1" and 1 differ. Used in
// failure evidence.
std::string DisplayText(const Value& v);

// Depth-limited capture of a value taken by an instrumented run.
struct ValueSnapshot {
  Value value;          // scalars only; records keep the record here as well
  bool elided = false;  // record beyond the depth limit, no children
  std::vector<std::pair<std::string, ValueSnapshot>> fields;
  std::string text;  // CanonicalText of the value

  bool is_record() const { return value.is_record(); }
};

ValueSnapshot Snapshot(const Value& v);

}  // namespace ampdiff

#endif  // AMPDIFF_VALUE_H_
