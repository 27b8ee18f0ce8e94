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

#include "vulnlife/propagation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "vulnlife/csv.hpp"
#include "vulnlife/error.hpp"

namespace vulnlife {
namespace {

void require_next_edges(const DependencyGraph& graph) {
  if (!graph.has_next_edges() && graph.size() > 0) {
    throw DataError("successor edges have not been computed for this graph");
  }
}

LifetimeSample make_sample(const DependencyGraph& graph, const CveRecord& cve,
                           ReleaseId id, int level, Day observation_end) {
  const Release& r = graph.release(id);
  LifetimeSample s;
  s.cve_id = cve.id;
  s.artifact_id = r.artifact_id;
  s.version = r.version.raw();
  s.level = level;
  if (const auto fix = graph.next(id)) {
    const Day fixed_at = graph.release(*fix).released_at;
    s.fixed_at = fixed_at;
    s.level_days = fixed_at - r.released_at;
    s.cumulative_days = fixed_at - cve.published_at;
  } else {
    s.censored = true;
    s.level_days = observation_end - r.released_at;
    s.cumulative_days = observation_end - cve.published_at;
  }
  return s;
}

// Youngest release per artifact among `ids`, in artifact order.
std::vector<ReleaseId> youngest_per_artifact(const DependencyGraph& graph,
                                             std::span<const ReleaseId> ids) {
  std::map<std::string_view, ReleaseId> best;
  for (const ReleaseId id : ids) {
    const Release& r = graph.release(id);
    auto [it, inserted] = best.emplace(r.artifact_id, id);
    if (!inserted && graph.release(it->second).version < r.version) {
      it->second = id;
    }
  }
  std::vector<ReleaseId> out;
  out.reserve(best.size());
  for (const auto& [artifact, id] : best) out.push_back(id);
  return out;
}

bool sample_less(const LifetimeSample& a, const LifetimeSample& b) {
  return std::tie(a.cve_id, a.artifact_id, a.level) <
         std::tie(b.cve_id, b.artifact_id, b.level);
}

std::int64_t parse_int(const std::string& text, const std::string& source,
                       std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError(source, line, "expected integer, found '" + text + "'");
  }
  return value;
}

}  // namespace

const char* to_string(DurationField field) {
  return field == DurationField::kCumulative ? "cumulative" : "level";
}

DurationField parse_duration_field(std::string_view text) {
  if (text == "cumulative") return DurationField::kCumulative;
  if (text == "level") return DurationField::kLevel;
  throw DataError("unknown duration field '" + std::string(text) + "'");
}

std::vector<DirectMark> mark_direct(const DependencyGraph& graph,
                                    const CveRecord& cve) {
  require_next_edges(graph);
  std::vector<DirectMark> marks;
  for (const ReleaseId id : youngest_per_artifact(graph, cve.affected_releases)) {
    marks.push_back({graph.release(id).artifact_id, id, graph.next(id)});
  }
  return marks;
}

std::vector<LifetimeSample> propagate(const DependencyGraph& graph,
                                      const CveRecord& cve,
                                      const PropagationOptions& options) {
  if (options.max_level < 0) throw DataError("max_level must be >= 0");
  const Day horizon = options.observation_end.value_or(graph.observation_end());

  std::vector<LifetimeSample> samples;
  std::vector<int> level(graph.size(), -1);
  std::vector<ReleaseId> frontier;
  for (const auto& mark : mark_direct(graph, cve)) {
    level[mark.release] = 0;
    frontier.push_back(mark.release);
  }

  for (int depth = 0; !frontier.empty(); ++depth) {
    for (const ReleaseId id : youngest_per_artifact(graph, frontier)) {
      samples.push_back(make_sample(graph, cve, id, depth, horizon));
    }
    if (depth == options.max_level) break;
    std::vector<ReleaseId> next_frontier;
    for (const ReleaseId id : frontier) {
      for (const ReleaseId dependent : graph.dependents(id)) {
        if (level[dependent] >= 0) continue;
        level[dependent] = depth + 1;
        next_frontier.push_back(dependent);
      }
    }
    frontier = std::move(next_frontier);
  }

  std::sort(samples.begin(), samples.end(), sample_less);
  return samples;
}

std::vector<LifetimeSample> propagate_all(const DependencyGraph& graph,
                                          std::span<const CveRecord> cves,
                                          const PropagationOptions& options,
                                          unsigned workers) {
  require_next_edges(graph);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(cves.size(), 1));

  std::vector<std::vector<LifetimeSample>> per_cve(cves.size());
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < cves.size(); i += workers) {
        per_cve[i] = propagate(graph, cves[i], options);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<LifetimeSample> merged;
  for (auto& part : per_cve) {
    std::move(part.begin(), part.end(), std::back_inserter(merged));
  }
  std::stable_sort(merged.begin(), merged.end(), sample_less);
  return merged;
}

std::vector<LifetimeSample> filter_samples(std::vector<LifetimeSample> samples,
                                           FilterReport* report) {
  FilterReport local;
  local.input = samples.size();
  std::erase_if(samples, [&](const LifetimeSample& s) {
    if (s.level_days < 0) {
      ++local.negative_level;
      return true;
    }
    if (s.cumulative_days < 0) {
      ++local.negative_cumulative;
      return true;
    }
    return false;
  });
  local.retained = samples.size();
  if (report) *report = local;
  return samples;
}

void write_samples_csv(std::ostream& out,
                       std::span<const LifetimeSample> samples) {
  out << "cve_id,artifact_id,level,cumulative_days,level_days,censored\n";
  for (const auto& s : samples) {
    csv::write_row(out, {s.cve_id, s.artifact_id, std::to_string(s.level),
                         std::to_string(s.cumulative_days),
                         std::to_string(s.level_days),
                         s.censored ? "1" : "0"});
  }
}

std::vector<LifetimeSample> read_samples_csv(std::istream& in,
                                             const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const char* names[] = {"cve_id",     "artifact_id", "level",
                         "cumulative_days", "level_days", "censored"};
  int cols[6];
  for (int i = 0; i < 6; ++i) {
    cols[i] = table.column(names[i]);
    if (cols[i] < 0) {
      throw FormatError(source, 1, std::string("missing column '") + names[i] + "'");
    }
  }
  std::vector<LifetimeSample> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto at = [&](int i) -> const std::string& {
      return row.fields[static_cast<std::size_t>(cols[i])];
    };
    LifetimeSample s;
    s.cve_id = at(0);
    s.artifact_id = at(1);
    s.level = static_cast<int>(parse_int(at(2), source, row.line));
    s.cumulative_days = parse_int(at(3), source, row.line);
    s.level_days = parse_int(at(4), source, row.line);
    const std::string& c = at(5);
    if (c == "1" || c == "true") {
      s.censored = true;
    } else if (c != "0" && c != "false") {
      throw FormatError(source, row.line, "censored must be 0/1");
    }
    if (s.level < 0) throw FormatError(source, row.line, "negative level");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LifetimeSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_samples_csv(in, path);
}

}  // namespace vulnlife
