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

#include "vulnlife/survival.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "vulnlife/csv.hpp"
#include "vulnlife/error.hpp"

namespace vulnlife {

double SurvivalCurve::at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 1.0;
  return survival[static_cast<std::size_t>(it - times.begin()) - 1];
}

double SurvivalCurve::median() const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (survival[i] <= 0.5) return times[i];
  }
  return std::numeric_limits<double>::infinity();
}

SurvivalCurve kaplan_meier(std::span<const Observation> observations) {
  if (observations.empty()) throw EmptyInput("kaplan_meier: no observations");
  std::vector<Observation> sorted(observations.begin(), observations.end());
  for (const auto& o : sorted) {
    if (!(o.time >= 0.0)) throw DataError("kaplan_meier: negative duration");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Observation& a, const Observation& b) {
              return a.time < b.time;
            });

  SurvivalCurve curve;
  double s = 1.0;
  std::size_t remaining = sorted.size();
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double t = sorted[i].time;
    std::size_t deaths = 0;
    std::size_t ties = 0;
    for (; i < sorted.size() && sorted[i].time == t; ++i, ++ties) {
      if (!sorted[i].censored) ++deaths;
    }
    if (deaths > 0) {
      s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(remaining);
      curve.times.push_back(t);
      curve.deaths.push_back(deaths);
      curve.at_risk.push_back(remaining);
      curve.survival.push_back(s);
    }
    remaining -= ties;
  }
  return curve;
}

std::vector<Observation> observations(std::span<const LifetimeSample> samples,
                                      DurationField field) {
  std::vector<Observation> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({static_cast<double>(s.duration(field)), s.censored});
  }
  return out;
}

std::map<int, SurvivalCurve> stratified_survival(
    std::span<const LifetimeSample> samples, DurationField field) {
  std::map<int, std::vector<Observation>> strata;
  for (const auto& s : samples) {
    strata[s.level].push_back(
        {static_cast<double>(s.duration(field)), s.censored});
  }
  std::map<int, SurvivalCurve> curves;
  for (const auto& [level, obs] : strata) curves.emplace(level, kaplan_meier(obs));
  return curves;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw EmptyInput("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::vector<LevelStats> level_stats(std::span<const LifetimeSample> samples,
                                    DurationField field,
                                    bool include_censored) {
  std::map<int, std::vector<double>> by_level;
  for (const auto& s : samples) {
    if (s.censored && !include_censored) continue;
    by_level[s.level].push_back(static_cast<double>(s.duration(field)));
  }
  std::vector<LevelStats> out;
  for (auto& [level, values] : by_level) {
    std::sort(values.begin(), values.end());
    LevelStats st;
    st.level = level;
    st.count = values.size();
    double sum = 0.0;
    for (const double v : values) sum += v;
    st.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (const double v : values) ss += (v - st.mean) * (v - st.mean);
      st.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    st.min = values.front();
    st.max = values.back();
    st.q25 = quantile_sorted(values, 0.25);
    st.median = quantile_sorted(values, 0.5);
    st.q75 = quantile_sorted(values, 0.75);
    out.push_back(st);
  }
  return out;
}

void write_curves_csv(std::ostream& out,
                      const std::map<int, SurvivalCurve>& curves) {
  out << "level,t,survival,at_risk,deaths\n";
  for (const auto& [level, c] : curves) {
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      out << fmt::format("{},{},{},{},{}\n", level, c.times[i], c.survival[i],
                         c.at_risk[i], c.deaths[i]);
    }
  }
}

void write_level_stats_csv(std::ostream& out,
                           std::span<const LevelStats> stats) {
  out << "level,mean,std,min,q25,median,q75,max,count\n";
  for (const auto& s : stats) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", s.level, s.mean, s.std,
                       s.min, s.q25, s.median, s.q75, s.max, s.count);
  }
}

std::vector<LevelStats> read_level_stats_csv(std::istream& in,
                                             const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const int c_level = table.column("level");
  if (c_level < 0) throw FormatError(source, 1, "missing column 'level'");
  auto number = [&](const csv::Row& row, const char* name) -> double {
    const int c = table.column(name);
    if (c < 0) return std::numeric_limits<double>::quiet_NaN();
    const std::string& text = row.fields[static_cast<std::size_t>(c)];
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw FormatError(source, row.line,
                        std::string("invalid number in '") + name + "'");
    }
  };
  std::vector<LevelStats> out;
  for (const auto& row : table.rows) {
    LevelStats s;
    s.level = static_cast<int>(number(row, "level"));
    s.mean = number(row, "mean");
    s.std = number(row, "std");
    s.min = number(row, "min");
    s.q25 = number(row, "q25");
    s.median = number(row, "median");
    s.q75 = number(row, "q75");
    s.max = number(row, "max");
    const double count = number(row, "count");
    s.count = std::isnan(count) ? 0 : static_cast<std::size_t>(count);
    out.push_back(s);
  }
  return out;
}

}  // namespace vulnlife
