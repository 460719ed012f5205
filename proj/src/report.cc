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

#include "ampdiff/report.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ampdiff {
namespace {

using nlohmann::ordered_json;

ordered_json DetectorJson(const Detector& d) {
  ordered_json lineage = ordered_json::array();
  for (const TransformRecord& r : d.amplified.lineage) {
    lineage.push_back({{"op", r.op},
                       {"site", r.site},
                       {"old", r.old_value},
                       {"new", r.new_value}});
  }
  return {{"name", d.name()},
          {"origin", d.amplified.origin},
          {"lineage", std::move(lineage)},
          {"evidence",
           {{"kind", d.evidence.kind},
            {"position", d.evidence.position},
            {"expected", d.evidence.expected},
            {"actual", d.evidence.actual}}},
          {"steps", {{"pre", d.steps_pre}, {"post", d.steps_post}}}};
}

const ModeCounts* CountsFor(const DetectionReport& r, const std::string& mode) {
  for (const ModeCounts& c : r.per_mode) {
    if (c.mode == mode) return &c;
  }
  return nullptr;
}

std::string Millis(double ms) {
  return std::to_string(std::llround(ms)) + " ms";
}

double PhaseTime(const DetectionReport& r, const std::string& phase) {
  for (const auto& [name, ms] : r.timing.phases) {
    if (name == phase) return ms;
  }
  return 0;
}

}  // namespace

void SortDetectors(std::vector<Detector>& detectors) {
  std::stable_sort(detectors.begin(), detectors.end(),
                   [](const Detector& a, const Detector& b) {
                     if (a.amplified.origin != b.amplified.origin) {
                       return a.amplified.origin < b.amplified.origin;
                     }
                     return a.name() < b.name();
                   });
}

ordered_json ToJson(const DetectionReport& report) {
  ordered_json j;
  j["case"] = report.case_id;
  j["mode"] = report.mode;
  j["config"] = {
      {"iterations", report.config.iterations},
      {"seed", report.config.seed},
      {"max_variants", report.config.max_variants == kUnboundedVariants
                           ? ordered_json(nullptr)
                           : ordered_json(report.config.max_variants)},
      {"fuel", report.config.fuel}};
  j["diff_coverage"] = report.diff_coverage;
  j["selected"] = report.selected;
  j["counts"] = {{"selected", report.selected.size()},
                 {"amplified", report.amplified},
                 {"detectors", report.detectors.size()}};
  if (report.mode == "both") {
    ordered_json per_mode = ordered_json::object();
    for (const ModeCounts& c : report.per_mode) {
      per_mode[c.mode] = {{"amplified", c.amplified},
                          {"detectors", c.detectors}};
    }
    j["counts"]["per_mode"] = std::move(per_mode);
  }
  ordered_json detectors = ordered_json::array();
  for (const Detector& d : report.detectors)
    detectors.push_back(DetectorJson(d));
  j["detectors"] = std::move(detectors);
  ordered_json phases = ordered_json::object();
  for (const auto& [name, ms] : report.timing.phases) phases[name] = ms;
  j["timing"] = {{"total_ms", report.timing.total_ms},
                 {"phases", std::move(phases)}};
  return j;
}

std::string SerializeReport(const DetectionReport& report) {
  return ToJson(report).dump(2) + "\n";
}

std::string DeterministicPart(const DetectionReport& report) {
  ordered_json j = ToJson(report);
  j.erase("timing");
  return j.dump(2) + "\n";
}

std::string DetectionCell(std::size_t detectors) {
  return detectors == 0 ? "-" : "yes(" + std::to_string(detectors) + ")";
}

std::string RenderMarkdown(const std::vector<DetectionReport>& reports) {
  std::ostringstream out;
  out << "| id | Cov | #Selected | AAMPL | Time | SBAMPL | Time |\n"
      << "|---|---|---|---|---|---|---|\n";
  for (const DetectionReport& r : reports) {
    out << "| " << r.case_id << " | " << r.diff_coverage << " | "
        << r.selected.size();
    for (const char* mode : {"aampl", "sbampl"}) {
      const ModeCounts* c = CountsFor(r, mode);
      if (c == nullptr) {
        out << " | n/a | n/a";
      } else {
        out << " | " << DetectionCell(c->detectors) << " | "
            << Millis(PhaseTime(r, mode));
      }
    }
    out << " |\n";
  }
  return out.str();
}

}  // namespace ampdiff
