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

#ifndef AMPDIFF_REPORT_H_
#define AMPDIFF_REPORT_H_

#include <cstddef>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "ampdiff/detect.h"
#include "ampdiff/search_amp.h"

namespace ampdiff {

struct ModeCounts {
  std::string mode;  // "aampl" or "sbampl"
  std::size_t amplified = 0;
  std::size_t detectors = 0;
};

struct Timing {
  double total_ms = 0;
  std::vector<std::pair<std::string, double>> phases;
};

struct DetectionReport {
  std::string case_id;
  std::string mode;  // "aampl", "sbampl" or "both"
  SearchConfig config;
  std::string diff_coverage = "0.0000";
  std::vector<std::string> selected;
  std::size_t amplified = 0;
  std::vector<Detector> detectors;
  std::vector<ModeCounts> per_mode;  // one entry per mode that ran
  Timing timing;
};

// Orders detectors by (origin, name).
void SortDetectors(std::vector<Detector>& detectors);

nlohmann::ordered_json ToJson(const DetectionReport& report);

// Pretty-printed JSON with a trailing newline.
std::string SerializeReport(const DetectionReport& report);

// The same without the timing block; equal for equal inputs and seed.
std::string DeterministicPart(const DetectionReport& report);

// "-" for no detectors, "yes(k)" otherwise.
std::string DetectionCell(std::size_t detectors);

// One row per report: id, Cov, #Selected, AAMPL, Time, SBAMPL, Time.
std::string RenderMarkdown(const std::vector<DetectionReport>& reports);

}  // namespace ampdiff

#endif  // AMPDIFF_REPORT_H_
