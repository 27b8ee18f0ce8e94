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

// Release-level dependency graph with derived successor edges, and the
// vulnerability advisories attached to it.

#ifndef VULNLIFE_DEPGRAPH_HPP_
#define VULNLIFE_DEPGRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vulnlife/date.hpp"
#include "vulnlife/version.hpp"

namespace vulnlife {

using ReleaseId = std::uint32_t;

struct Release {
  std::string artifact_id;  // "group:artifact"
  Version version;
  Day released_at = 0;

  std::string coordinate() const { return artifact_id + ":" + version.raw(); }
};

struct DependencyRow {
  std::string from_artifact;
  std::string from_version;
  std::string to_artifact;
  std::string to_version;
  std::size_t line = 0;
};

struct IngestDiagnostics {
  std::size_t dropped_edges = 0;    // endpoint not among the releases
  std::size_t duplicate_edges = 0;  // collapsed by set semantics
  std::vector<std::string> messages;
};

struct NextEdgeStats {
  std::size_t with_successor = 0;
  // Releases where the three-step heuristic picks the same successor.
  std::size_t heuristic_agreement = 0;
  double agreement_ratio() const {
    return with_successor
               ? static_cast<double>(heuristic_agreement) / with_successor
               : 0.0;
  }
};

struct AffectedEdge {
  std::string cve_id;
  ReleaseId release = 0;
  int level = 0;
};

class DependencyGraph {
 public:
  DependencyGraph() = default;

  // Validates and indexes. Release ids follow (artifact_id, version) order,
  // so the result does not depend on row order. Throws FormatError on a
  // duplicate release and CycleDetected on a release-level cycle. Edges with
  // an unknown endpoint are dropped and counted in `diagnostics`.
  static DependencyGraph build(std::vector<Release> releases,
                               std::span<const DependencyRow> deps,
                               IngestDiagnostics* diagnostics = nullptr);

  std::size_t size() const noexcept { return releases_.size(); }
  std::span<const Release> releases() const noexcept { return releases_; }
  const Release& release(ReleaseId id) const { return releases_.at(id); }

  std::optional<ReleaseId> find(std::string_view artifact_id,
                                std::string_view version) const;
  bool has_artifact(std::string_view artifact_id) const;
  // Releases of one artifact in ascending version order; empty if unknown.
  std::span<const ReleaseId> versions_of(std::string_view artifact_id) const;
  const std::map<std::string, std::vector<ReleaseId>, std::less<>>& artifacts()
      const noexcept {
    return by_artifact_;
  }

  // Outgoing (dependency) and incoming (dependent) edges, sorted by id.
  std::span<const ReleaseId> dependencies(ReleaseId id) const {
    return deps_.at(id);
  }
  std::span<const ReleaseId> dependents(ReleaseId id) const {
    return rdeps_.at(id);
  }
  std::size_t dep_edge_count() const noexcept { return edge_count_; }

  // Links every release to its successor among its artifact's versions:
  // semver_next, falling back to heuristic_next where the former is empty.
  NextEdgeStats compute_next_edges();
  bool has_next_edges() const noexcept { return !next_.empty(); }
  std::optional<ReleaseId> next(ReleaseId id) const;

  // Latest release date in the graph; the right-censoring horizon.
  Day observation_end() const noexcept { return observation_end_; }

  void add_affected(AffectedEdge edge);
  const std::vector<AffectedEdge>& affected_edges() const noexcept {
    return affected_;
  }

 private:
  std::vector<Release> releases_;
  std::unordered_map<std::string, ReleaseId> index_;
  std::map<std::string, std::vector<ReleaseId>, std::less<>> by_artifact_;
  std::vector<std::vector<ReleaseId>> deps_;
  std::vector<std::vector<ReleaseId>> rdeps_;
  std::vector<std::optional<ReleaseId>> next_;
  std::vector<AffectedEdge> affected_;
  std::size_t edge_count_ = 0;
  Day observation_end_ = 0;
};

// Reads `artifact_id,version,released_at` and
// `from_artifact,from_version,to_artifact,to_version` CSV files.
DependencyGraph ingest_graph(std::istream& releases, std::istream& deps,
                             IngestDiagnostics* diagnostics = nullptr);
DependencyGraph ingest_graph(const std::string& releases_path,
                             const std::string& deps_path,
                             IngestDiagnostics* diagnostics = nullptr);

void write_releases_csv(std::ostream& out, const DependencyGraph& graph);
void write_deps_csv(std::ostream& out, const DependencyGraph& graph);
// `artifact_id,version,next_version`; next_version empty without successor.
void write_next_edges_csv(std::ostream& out, const DependencyGraph& graph);

// One package entry of an advisory. `introduced` is inclusive, `fixed`
// exclusive; introduced "0" means "from the first version".
struct AffectedPackage {
  std::string package;
  std::vector<std::string> versions;
  std::optional<std::string> introduced;
  std::optional<std::string> fixed;
};

struct CveRecord {
  std::string id;
  Day published_at = 0;
  std::vector<AffectedPackage> affected;
  std::optional<std::string> severity;
  // Releases of the graph matched by `affected`, ascending id.
  std::vector<ReleaseId> affected_releases;
};

struct CveDiagnostics {
  std::vector<std::string> unknown_artifacts;
  std::size_t unknown_versions = 0;  // explicitly listed but not in graph
};

// Parses the OSV subset `[{id, published, affected:[{package, versions?,
// introduced?, fixed?}], severity?}]` and expands each advisory against the
// graph's known versions. Unknown packages are reported, not fatal.
std::vector<CveRecord> ingest_cves(std::istream& in, const std::string& source,
                                   const DependencyGraph& graph,
                                   CveDiagnostics* diagnostics = nullptr);
std::vector<CveRecord> ingest_cves(const std::string& path,
                                   const DependencyGraph& graph,
                                   CveDiagnostics* diagnostics = nullptr);

// Recomputes `cve.affected_releases` from `cve.affected`.
void expand_affected(CveRecord& cve, const DependencyGraph& graph,
                     CveDiagnostics* diagnostics = nullptr);

// Records a level-0 affected edge for every expanded release.
void link_affected(DependencyGraph& graph, std::span<const CveRecord> cves);

void write_cves_json(std::ostream& out, std::span<const CveRecord> cves);

}  // namespace vulnlife

#endif  // VULNLIFE_DEPGRAPH_HPP_
