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

// Transitive propagation of advisories through reverse dependencies and
// extraction of per-level lifetime samples.

#ifndef VULNLIFE_PROPAGATION_HPP_
#define VULNLIFE_PROPAGATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vulnlife/depgraph.hpp"

namespace vulnlife {

enum class DurationField { kCumulative, kLevel };

const char* to_string(DurationField field);
// "cumulative" or "level"; throws DataError otherwise.
DurationField parse_duration_field(std::string_view text);

struct LifetimeSample {
  std::string cve_id;
  std::string artifact_id;
  std::string version;  // affected release; not part of the CSV form
  int level = 0;
  std::int64_t cumulative_days = 0;  // publication -> fixing release
  std::int64_t level_days = 0;       // affected release -> fixing release
  bool censored = false;
  std::optional<Day> fixed_at;

  std::int64_t duration(DurationField field) const {
    return field == DurationField::kCumulative ? cumulative_days : level_days;
  }
};

struct DirectMark {
  std::string artifact_id;
  ReleaseId release = 0;          // youngest affected version
  std::optional<ReleaseId> fix;   // its successor, if any
};

// One mark per artifact with at least one affected release in the graph.
// Requires compute_next_edges() to have run.
std::vector<DirectMark> mark_direct(const DependencyGraph& graph,
                                    const CveRecord& cve);

struct PropagationOptions {
  int max_level = 10;
  // Right-censoring horizon; defaults to graph.observation_end().
  std::optional<Day> observation_end;
};

// Breadth-first walk over reverse dependency edges starting from the level-0
// marks. A release's level is the shortest distance to a mark. At every level
// only the highest affected version of each artifact yields a sample; its fix
// event is the release's own successor. Output is ordered by
// (artifact_id, level).
std::vector<LifetimeSample> propagate(const DependencyGraph& graph,
                                      const CveRecord& cve,
                                      const PropagationOptions& options = {});

// Processes advisories independently on up to `workers` threads (0: one per
// hardware thread). Output is ordered by (cve_id, artifact_id, level) and
// does not depend on the worker count.
std::vector<LifetimeSample> propagate_all(const DependencyGraph& graph,
                                          std::span<const CveRecord> cves,
                                          const PropagationOptions& options = {},
                                          unsigned workers = 0);

struct FilterReport {
  std::size_t input = 0;
  std::size_t negative_level = 0;
  std::size_t negative_cumulative = 0;
  std::size_t retained = 0;
};

// Drops samples with a negative single-level or cumulative duration. A sample
// failing both checks is counted under negative_level.
std::vector<LifetimeSample> filter_samples(std::vector<LifetimeSample> samples,
                                           FilterReport* report = nullptr);

// `cve_id,artifact_id,level,cumulative_days,level_days,censored`
void write_samples_csv(std::ostream& out,
                       std::span<const LifetimeSample> samples);
std::vector<LifetimeSample> read_samples_csv(std::istream& in,
                                             const std::string& source);
std::vector<LifetimeSample> read_samples_csv(const std::string& path);

}  // namespace vulnlife

#endif  // VULNLIFE_PROPAGATION_HPP_
