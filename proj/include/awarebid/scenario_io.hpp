// Copyright 2026 The awarebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awarebid/engine.hpp"
#include "awarebid/scenario.hpp"

namespace awarebid {

/// Malformed scenario file. The message starts with a line/column or a JSON
/// path such as `characteristics[1].distribution[0]`.
class ScenarioFileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scenario document:
///
///   {
///     "bidders": ["A", "B"],                  // names, or a count
///     "characteristics": [
///       {"name": "quality",
///        "distribution": {"type": "uniform", "lo": 0, "hi": 5}},   // shared by all bidders
///       {"name": "fit",
///        "distribution": [{"type": "discrete", "atoms": [[0, "1/2"], [2, "1/2"]]},
///                         {"type": "normal", "mean": 0, "stddev": 1}]}  // one per bidder
///     ],
///     "awareness": [[1, 2], [1]],
///     "info": [{"1": "full", "2": "none"}, {"1": {"groups": [0, 0, 1]}}],
///     "exogenous_info": [...],                // optional, same shape, every pair
///     "estimator": {"backend": "exact", "samples": 100000, "seed": 1}
///   }
///
/// Rationals may be JSON numbers or strings such as "7/4". Info levels are
/// "none", "full", {"cuts": [...]} (continuous laws) or {"groups": [...]}
/// (one label per support point). Missing awareness means characteristic 1
/// only; missing info on an aware pair means full information.
struct ScenarioFile {
  Scenario scenario;
  DisclosurePolicy policy;
  /// Info each pair would receive if made aware; full info where absent.
  InfoPlan plan;
  bool has_plan = false;
  EstimatorConfig estimator;
  std::vector<std::string> characteristic_names;
};

ScenarioFile parse_scenario_text(std::string_view text);
ScenarioFile parse_scenario(const std::filesystem::path& path);

/// Canonical JSON (two-space indent, LF, trailing newline).
std::string write_scenario(const ScenarioFile& file);

}  // namespace awarebid
