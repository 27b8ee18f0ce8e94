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

#include "report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "vulnlife/error.hpp"

namespace vulnlife::tools {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

nlohmann::ordered_json regression_json(Target target,
                                       const RegressionResult& result) {
  const MonthsRule months = months_rule(result);
  nlohmann::ordered_json j;
  j["target"] = to_string(target);
  j["intercept"] = result.intercept;
  j["slope"] = result.slope;
  j["r2"] = result.r_squared;
  j["n"] = result.n_points;
  j["months"] = {{"slope", months.slope_months},
                 {"intercept", months.intercept_months}};
  return j;
}

std::vector<std::string> write_report(std::span<const LifetimeSample> samples,
                                      const std::filesystem::path& dir,
                                      const ReportOptions& options,
                                      const nlohmann::ordered_json& config) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;

  {
    auto out = open_out(dir / kSurvivalCurvesFile);
    write_curves_csv(out, stratified_survival(samples, options.field));
    written.emplace_back(kSurvivalCurvesFile);
  }

  const auto cumulative =
      level_stats(samples, DurationField::kCumulative, options.include_censored);
  const auto single =
      level_stats(samples, DurationField::kLevel, options.include_censored);
  {
    auto out = open_out(dir / kCumulativeStatsFile);
    write_level_stats_csv(out, cumulative);
    written.emplace_back(kCumulativeStatsFile);
  }
  {
    auto out = open_out(dir / kLevelStatsFile);
    write_level_stats_csv(out, single);
    written.emplace_back(kLevelStatsFile);
  }
  {
    auto out = open_out(dir / kDurationsFile);
    out << "level,cumulative_days,level_days,censored\n";
    for (const auto& s : samples) {
      out << fmt::format("{},{},{},{}\n", s.level, s.cumulative_days,
                         s.level_days, s.censored ? 1 : 0);
    }
    written.emplace_back(kDurationsFile);
  }

  const auto& stats =
      options.field == DurationField::kCumulative ? cumulative : single;
  nlohmann::ordered_json regression = nlohmann::ordered_json::array();
  {
    auto out = open_out(dir / kRegressionPointsFile);
    out << "level,mean,median,fitted_mean,fitted_median\n";
    if (stats.size() >= 2) {
      const auto mean_fit = ols_fit(level_points(stats, Target::kMean));
      const auto median_fit = ols_fit(level_points(stats, Target::kMedian));
      regression.push_back(regression_json(Target::kMean, mean_fit));
      regression.push_back(regression_json(Target::kMedian, median_fit));
      std::size_t next = 0;
      for (int level = 0; level <= stats.back().level; ++level) {
        std::string mean = "";
        std::string median = "";
        if (next < stats.size() && stats[next].level == level) {
          mean = fmt::format("{}", stats[next].mean);
          median = fmt::format("{}", stats[next].median);
          ++next;
        }
        out << fmt::format("{},{},{},{},{}\n", level, mean, median,
                           mean_fit.predict(level), median_fit.predict(level));
      }
    }
    written.emplace_back(kRegressionPointsFile);
  }
  {
    nlohmann::ordered_json doc;
    doc["duration"] = to_string(options.field);
    doc["fits"] = regression;
    doc["config"] = config;
    auto out = open_out(dir / kRegressionFile);
    out << doc.dump(2) << '\n';
    written.emplace_back(kRegressionFile);
  }
  {
    auto out = open_out(dir / kRunConfigFile);
    out << config.dump(2) << '\n';
    written.emplace_back(kRunConfigFile);
  }
  return written;
}

}  // namespace vulnlife::tools
