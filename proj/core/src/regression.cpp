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

#include "vulnlife/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vulnlife/error.hpp"

namespace vulnlife {

RegressionResult ols_fit(std::span<const Point> points) {
  if (points.size() < 2) throw DataError("ols_fit: need at least two points");
  const auto n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (sxx == 0.0) throw DegenerateData("ols_fit: all levels are equal");

  RegressionResult r;
  r.n_points = points.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double e = p.y - r.predict(p.x);
    ss_res += e * e;
  }
  r.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return r;
}

const char* to_string(Target target) {
  return target == Target::kMean ? "mean" : "median";
}

Target parse_target(std::string_view text) {
  if (text == "mean") return Target::kMean;
  if (text == "median") return Target::kMedian;
  throw DataError("unknown regression target '" + std::string(text) + "'");
}

std::vector<Point> level_points(std::span<const LevelStats> stats,
                                Target target) {
  std::vector<Point> out;
  out.reserve(stats.size());
  for (const auto& s : stats) {
    out.push_back({static_cast<double>(s.level),
                   target == Target::kMean ? s.mean : s.median});
  }
  return out;
}

std::vector<Point> sample_points(std::span<const LifetimeSample> samples,
                                 DurationField field) {
  std::vector<Point> out;
  for (const auto& s : samples) {
    if (s.censored) continue;
    out.push_back({static_cast<double>(s.level),
                   static_cast<double>(s.duration(field))});
  }
  return out;
}

MonthsRule months_rule(const RegressionResult& result) {
  return {std::lround(result.slope / kDaysPerMonth),
          std::lround(result.intercept / kDaysPerMonth)};
}

}  // namespace vulnlife
