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

#ifndef VULNLIFE_REGRESSION_HPP_
#define VULNLIFE_REGRESSION_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vulnlife/propagation.hpp"
#include "vulnlife/survival.hpp"

namespace vulnlife {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct RegressionResult {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;

  double predict(double x) const { return intercept + slope * x; }
};

// Closed-form ordinary least squares with R^2 = 1 - SS_res / SS_tot (1 when
// every y is equal). Throws DataError below two points and DegenerateData
// when all x are equal.
RegressionResult ols_fit(std::span<const Point> points);

enum class Target { kMean, kMedian };
const char* to_string(Target target);
Target parse_target(std::string_view text);

// One (level, mean or median) point per level of the statistics table.
std::vector<Point> level_points(std::span<const LevelStats> stats,
                                Target target);

// One (level, duration) point per uncensored sample.
std::vector<Point> sample_points(std::span<const LifetimeSample> samples,
                                 DurationField field);

inline constexpr double kDaysPerMonth = 30.44;

struct MonthsRule {
  long slope_months = 0;
  long intercept_months = 0;
};

// Coefficients converted to months and rounded to the nearest month.
MonthsRule months_rule(const RegressionResult& result);

}  // namespace vulnlife

#endif  // VULNLIFE_REGRESSION_HPP_
