// Copyright 2026 The vulnlife Authors
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

#ifndef VULNLIFE_TOOLS_REPORT_HPP_
#define VULNLIFE_TOOLS_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vulnlife/propagation.hpp"
#include "vulnlife/regression.hpp"
#include "vulnlife/survival.hpp"

namespace vulnlife::tools {

struct ReportOptions {
  DurationField field = DurationField::kCumulative;
  bool include_censored = false;
};

// Files written by write_report, relative to the output directory.
inline constexpr const char* kSurvivalCurvesFile = "survival_curves.csv";
inline constexpr const char* kCumulativeStatsFile = "level_stats_cumulative.csv";
inline constexpr const char* kLevelStatsFile = "level_stats_level.csv";
inline constexpr const char* kDurationsFile = "durations.csv";
inline constexpr const char* kRegressionPointsFile = "regression_points.csv";
inline constexpr const char* kRegressionFile = "regression.json";
inline constexpr const char* kRunConfigFile = "run_config.json";

nlohmann::ordered_json regression_json(Target target,
                                       const RegressionResult& result);

// Plot-ready outputs: survival curves per level, per-sample durations
// (violin source), per-level statistics for both duration fields, and the
// mean/median regression lines evaluated at every integer level. With no
// samples every file is still written with its header. Returns the file
// names written.
std::vector<std::string> write_report(std::span<const LifetimeSample> samples,
                                      const std::filesystem::path& dir,
                                      const ReportOptions& options,
                                      const nlohmann::ordered_json& config);

}  // namespace vulnlife::tools

#endif  // VULNLIFE_TOOLS_REPORT_HPP_
