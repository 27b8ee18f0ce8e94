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

// Kaplan-Meier survival curves and per-level descriptive statistics.

#ifndef VULNLIFE_SURVIVAL_HPP_
#define VULNLIFE_SURVIVAL_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "vulnlife/propagation.hpp"

namespace vulnlife {

struct Observation {
  double time = 0.0;
  bool censored = false;
};

// Product-limit estimate at the distinct event times. Censored observations
// at an event time count as at risk at that time.
struct SurvivalCurve {
  std::vector<double> times;
  std::vector<std::size_t> deaths;
  std::vector<std::size_t> at_risk;
  std::vector<double> survival;

  // S(t): 1 before the first event, right-continuous step function.
  double at(double t) const;
  // Smallest event time with S(t) <= 0.5, or +inf if never reached.
  double median() const;
};

// Throws EmptyInput for an empty sample and DataError for negative times.
SurvivalCurve kaplan_meier(std::span<const Observation> observations);

std::vector<Observation> observations(std::span<const LifetimeSample> samples,
                                      DurationField field);

std::map<int, SurvivalCurve> stratified_survival(
    std::span<const LifetimeSample> samples, DurationField field);

struct LevelStats {
  int level = 0;
  double mean = 0, std = 0, min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
  std::size_t count = 0;
};

// Linear-interpolation quantile of sorted data (numpy's default method).
double quantile_sorted(std::span<const double> sorted, double q);

// Moments and quartiles per level. Censored samples are skipped unless
// `include_censored` is set, in which case their censored durations are
// treated as plain values. Levels without values are omitted. `std` uses the
// n-1 denominator and is 0 for a single value.
std::vector<LevelStats> level_stats(std::span<const LifetimeSample> samples,
                                    DurationField field,
                                    bool include_censored = false);

// `level,t,survival,at_risk,deaths`
void write_curves_csv(std::ostream& out,
                      const std::map<int, SurvivalCurve>& curves);
// `level,mean,std,min,q25,median,q75,max,count`
void write_level_stats_csv(std::ostream& out,
                           std::span<const LevelStats> stats);
std::vector<LevelStats> read_level_stats_csv(std::istream& in,
                                             const std::string& source);

}  // namespace vulnlife

#endif  // VULNLIFE_SURVIVAL_HPP_
