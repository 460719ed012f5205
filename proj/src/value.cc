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

#include "ampdiff/value.h"

#include "ampdiff/render.h"

namespace ampdiff {

Value Value::Record(std::shared_ptr<const RecordLayout> layout,
                    std::vector<Value> fields) {
  return Value(RecordValue{
      std::move(layout),
      std::make_shared<const std::vector<Value>>(std::move(fields))});
}

const char* Value::TypeName() const {
  if (is_int()) return "int";
  if (is_bool()) return "bool";
  if (is_str()) return "str";
  if (is_record()) return "record";
  return "null";
}

bool ValuesEqual(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (a.is_int()) return b.is_int() && a.as_int() == b.as_int();
  if (a.is_bool()) return b.is_bool() && a.as_bool() == b.as_bool();
  if (a.is_str()) return b.is_str() && a.as_str() == b.as_str();
  if (!b.is_record()) return false;
  const RecordValue& ra = a.as_record();
  const RecordValue& rb = b.as_record();
  if (ra.layout->name != rb.layout->name) return false;
  if (ra.fields->size() != rb.fields->size()) return false;
  for (std::size_t i = 0; i < ra.fields->size(); ++i) {
    if (!ValuesEqual((*ra.fields)[i], (*rb.fields)[i])) return false;
  }
  return true;
}

namespace {

void AppendText(const Value& v, int depth, bool quote, std::string& out) {
  if (v.is_int()) {
    out += std::to_string(v.as_int());
  } else if (v.is_bool()) {
    out += v.as_bool() ? "true" : "false";
  } else if (v.is_str()) {
    out += quote ? QuoteString(v.as_str()) : v.as_str();
  } else if (v.is_null()) {
    out += "null";
  } else {
    const RecordValue& r = v.as_record();
    out += r.layout->name;
    if (depth > kSnapshotDepth) {
      out += "{...}";
      return;
    }
    out += '{';
    for (std::size_t i = 0; i < r.fields->size(); ++i) {
      if (i > 0) out += ", ";
      out += r.layout->fields[i];
      out += '=';
      AppendText((*r.fields)[i], depth + 1, quote, out);
    }
    out += '}';
  }
}

ValueSnapshot SnapshotAt(const Value& v, int depth) {
  ValueSnapshot snap;
  snap.value = v;
  std::string text;
  AppendText(v, depth, /*quote=*/false, text);
  snap.text = std::move(text);
  if (!v.is_record()) return snap;
  if (depth > kSnapshotDepth) {
    snap.elided = true;
    return snap;
  }
  const RecordValue& r = v.as_record();
  for (std::size_t i = 0; i < r.fields->size(); ++i) {
    snap.fields.emplace_back(r.layout->fields[i],
                             SnapshotAt((*r.fields)[i], depth + 1));
  }
  return snap;
}

}  // namespace

std::string CanonicalText(const Value& v) {
  std::string out;
  AppendText(v, 1, /*quote=*/false, out);
  return out;
}

std::string DisplayText(const Value& v) {
  std::string out;
  AppendText(v, 1, /*quote=*/true, out);
  return out;
}

ValueSnapshot Snapshot(const Value& v) { return SnapshotAt(v, 1); }

}  // namespace ampdiff
