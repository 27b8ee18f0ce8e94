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

#include "vulnlife/depgraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "vulnlife/csv.hpp"
#include "vulnlife/error.hpp"

namespace vulnlife {
namespace {

std::string key_of(std::string_view artifact, std::string_view version) {
  std::string key(artifact);
  key.push_back('\n');
  key.append(version);
  return key;
}

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " -> ";
    out += path[i];
  }
  return out;
}

const std::string& field(const csv::Row& row, int column) {
  return row.fields[static_cast<std::size_t>(column)];
}

int require_column(const csv::Table& table, std::string_view name,
                   const std::string& source) {
  const int c = table.column(name);
  if (c < 0) {
    throw FormatError(source, 1, "missing column '" + std::string(name) + "'");
  }
  return c;
}

// Iterative three-colour DFS over dependency edges.
void check_acyclic(const DependencyGraph& g) {
  enum Colour : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<Colour> colour(g.size(), kWhite);
  std::vector<ReleaseId> parent(g.size(), 0);
  for (ReleaseId root = 0; root < g.size(); ++root) {
    if (colour[root] != kWhite) continue;
    std::vector<std::pair<ReleaseId, std::size_t>> stack{{root, 0}};
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [node, next_child] = stack.back();
      const auto children = g.dependencies(node);
      if (next_child == children.size()) {
        colour[node] = kBlack;
        stack.pop_back();
        continue;
      }
      const ReleaseId child = children[next_child++];
      if (colour[child] == kGrey) {
        std::vector<std::string> path{g.release(child).coordinate()};
        for (ReleaseId at = node; at != child; at = parent[at]) {
          path.push_back(g.release(at).coordinate());
        }
        path.push_back(g.release(child).coordinate());
        std::reverse(path.begin() + 1, path.end() - 1);
        throw CycleDetected(std::move(path));
      }
      if (colour[child] == kWhite) {
        colour[child] = kGrey;
        parent[child] = node;
        stack.emplace_back(child, 0);
      }
    }
  }
}

std::string optional_string(const nlohmann::json& obj, const char* name,
                            const std::string& source) {
  const auto& v = obj.at(name);
  if (!v.is_string()) {
    throw FormatError(source, 0, std::string("'") + name + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

CycleDetected::CycleDetected(std::vector<std::string> path)
    : DataError("dependency cycle: " + join_path(path)),
      path_(std::move(path)) {}

DependencyGraph DependencyGraph::build(std::vector<Release> releases,
                                       std::span<const DependencyRow> deps,
                                       IngestDiagnostics* diagnostics) {
  IngestDiagnostics local;
  IngestDiagnostics& diag = diagnostics ? *diagnostics : local;

  std::sort(releases.begin(), releases.end(),
            [](const Release& a, const Release& b) {
              if (a.artifact_id != b.artifact_id) {
                return a.artifact_id < b.artifact_id;
              }
              return a.version < b.version;
            });

  DependencyGraph g;
  g.releases_ = std::move(releases);
  g.deps_.resize(g.releases_.size());
  g.rdeps_.resize(g.releases_.size());
  for (ReleaseId id = 0; id < g.releases_.size(); ++id) {
    const Release& r = g.releases_[id];
    if (!g.index_.emplace(key_of(r.artifact_id, r.version.raw()), id).second) {
      throw FormatError("releases", 0,
                        "duplicate release " + r.coordinate());
    }
    g.by_artifact_[r.artifact_id].push_back(id);
    g.observation_end_ =
        id == 0 ? r.released_at : std::max(g.observation_end_, r.released_at);
  }

  std::set<std::pair<ReleaseId, ReleaseId>> edges;
  for (const auto& row : deps) {
    const auto from = g.find(row.from_artifact, row.from_version);
    const auto to = g.find(row.to_artifact, row.to_version);
    if (!from || !to) {
      ++diag.dropped_edges;
      diag.messages.push_back(
          "line " + std::to_string(row.line) + ": dropped edge " +
          row.from_artifact + ":" + row.from_version + " -> " +
          row.to_artifact + ":" + row.to_version + " (unknown " +
          (!from ? "dependent" : "dependency") + ")");
      continue;
    }
    if (*from == *to) {
      const auto c = g.releases_[*from].coordinate();
      throw CycleDetected({c, c});
    }
    if (!edges.emplace(*from, *to).second) ++diag.duplicate_edges;
  }
  for (const auto& [from, to] : edges) {
    g.deps_[from].push_back(to);
    g.rdeps_[to].push_back(from);
  }
  for (auto& list : g.rdeps_) std::sort(list.begin(), list.end());
  g.edge_count_ = edges.size();

  check_acyclic(g);
  return g;
}

std::optional<ReleaseId> DependencyGraph::find(std::string_view artifact_id,
                                               std::string_view version) const {
  const auto it = index_.find(key_of(artifact_id, version));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool DependencyGraph::has_artifact(std::string_view artifact_id) const {
  return by_artifact_.find(artifact_id) != by_artifact_.end();
}

std::span<const ReleaseId> DependencyGraph::versions_of(
    std::string_view artifact_id) const {
  const auto it = by_artifact_.find(artifact_id);
  if (it == by_artifact_.end()) return {};
  return it->second;
}

NextEdgeStats DependencyGraph::compute_next_edges() {
  NextEdgeStats stats;
  next_.assign(releases_.size(), std::nullopt);
  for (const auto& [artifact, ids] : by_artifact_) {
    std::vector<Candidate> siblings;
    siblings.reserve(ids.size());
    for (const ReleaseId id : ids) {
      siblings.push_back({releases_[id].version, releases_[id].released_at});
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Version& current = siblings[i].version;
      std::optional<Version> chosen =
          semver_next(current, std::span<const Candidate>(siblings));
      const auto heuristic =
          heuristic_next(current, std::span<const Candidate>(siblings));
      if (!chosen && heuristic) chosen = heuristic->version;
      if (!chosen) continue;
      ++stats.with_successor;
      if (heuristic && heuristic->version == *chosen) {
        ++stats.heuristic_agreement;
      }
      next_[ids[i]] = *find(artifact, chosen->raw());
    }
  }
  return stats;
}

std::optional<ReleaseId> DependencyGraph::next(ReleaseId id) const {
  if (next_.empty()) return std::nullopt;
  return next_.at(id);
}

void DependencyGraph::add_affected(AffectedEdge edge) {
  if (edge.release >= releases_.size()) {
    throw DataError("affected edge targets unknown release");
  }
  affected_.push_back(std::move(edge));
}

DependencyGraph ingest_graph(std::istream& releases_in, std::istream& deps_in,
                             IngestDiagnostics* diagnostics) {
  const std::string rsrc = "releases";
  const csv::Table rt = csv::read(releases_in, rsrc);
  const int c_art = require_column(rt, "artifact_id", rsrc);
  const int c_ver = require_column(rt, "version", rsrc);
  const int c_day = require_column(rt, "released_at", rsrc);

  std::vector<Release> releases;
  releases.reserve(rt.rows.size());
  std::set<std::string> seen;
  for (const auto& row : rt.rows) {
    const std::string& artifact = field(row, c_art);
    const std::string& version = field(row, c_ver);
    if (artifact.empty()) throw FormatError(rsrc, row.line, "empty artifact_id");
    Release r;
    r.artifact_id = artifact;
    try {
      r.version = Version::parse(version);
    } catch (const UnparseableVersion& e) {
      throw FormatError(rsrc, row.line, e.what());
    }
    const auto day = parse_iso_date(field(row, c_day));
    if (!day) {
      throw FormatError(rsrc, row.line,
                        "invalid date '" + field(row, c_day) + "'");
    }
    r.released_at = *day;
    if (!seen.insert(key_of(artifact, version)).second) {
      throw FormatError(rsrc, row.line,
                        "duplicate release " + artifact + ":" + version);
    }
    releases.push_back(std::move(r));
  }

  const std::string dsrc = "deps";
  const csv::Table dt = csv::read(deps_in, dsrc);
  const int c_fa = require_column(dt, "from_artifact", dsrc);
  const int c_fv = require_column(dt, "from_version", dsrc);
  const int c_ta = require_column(dt, "to_artifact", dsrc);
  const int c_tv = require_column(dt, "to_version", dsrc);
  std::vector<DependencyRow> deps;
  deps.reserve(dt.rows.size());
  for (const auto& row : dt.rows) {
    deps.push_back({field(row, c_fa), field(row, c_fv), field(row, c_ta),
                    field(row, c_tv), row.line});
  }
  return DependencyGraph::build(std::move(releases), deps, diagnostics);
}

DependencyGraph ingest_graph(const std::string& releases_path,
                             const std::string& deps_path,
                             IngestDiagnostics* diagnostics) {
  std::ifstream releases(releases_path);
  if (!releases) throw DataError("cannot open '" + releases_path + "'");
  std::ifstream deps(deps_path);
  if (!deps) throw DataError("cannot open '" + deps_path + "'");
  return ingest_graph(releases, deps, diagnostics);
}

void write_releases_csv(std::ostream& out, const DependencyGraph& graph) {
  out << "artifact_id,version,released_at\n";
  for (const auto& r : graph.releases()) {
    csv::write_row(out, {r.artifact_id, r.version.raw(),
                         format_iso_date(r.released_at)});
  }
}

void write_deps_csv(std::ostream& out, const DependencyGraph& graph) {
  out << "from_artifact,from_version,to_artifact,to_version\n";
  for (ReleaseId id = 0; id < graph.size(); ++id) {
    const Release& from = graph.release(id);
    for (const ReleaseId to_id : graph.dependencies(id)) {
      const Release& to = graph.release(to_id);
      csv::write_row(out, {from.artifact_id, from.version.raw(), to.artifact_id,
                           to.version.raw()});
    }
  }
}

void write_next_edges_csv(std::ostream& out, const DependencyGraph& graph) {
  out << "artifact_id,version,next_version\n";
  for (ReleaseId id = 0; id < graph.size(); ++id) {
    const Release& r = graph.release(id);
    const auto next = graph.next(id);
    csv::write_row(out, {r.artifact_id, r.version.raw(),
                         next ? graph.release(*next).version.raw() : ""});
  }
}

void expand_affected(CveRecord& cve, const DependencyGraph& graph,
                     CveDiagnostics* diagnostics) {
  std::set<ReleaseId> matched;
  for (const auto& pkg : cve.affected) {
    const auto ids = graph.versions_of(pkg.package);
    if (ids.empty()) {
      if (diagnostics) {
        diagnostics->unknown_artifacts.push_back(cve.id + ": " + pkg.package);
      }
      continue;
    }
    for (const auto& v : pkg.versions) {
      if (const auto id = graph.find(pkg.package, v)) {
        matched.insert(*id);
      } else if (diagnostics) {
        ++diagnostics->unknown_versions;
      }
    }
    if (!pkg.introduced && !pkg.fixed) continue;
    std::optional<Version> lo;
    std::optional<Version> hi;
    if (pkg.introduced && *pkg.introduced != "0") {
      lo = Version::parse(*pkg.introduced);
    }
    if (pkg.fixed) hi = Version::parse(*pkg.fixed);
    for (const ReleaseId id : ids) {
      const Version& v = graph.release(id).version;
      if (lo && compare_precedence(v, *lo) < 0) continue;
      if (hi && compare_precedence(v, *hi) >= 0) continue;
      matched.insert(id);
    }
  }
  cve.affected_releases.assign(matched.begin(), matched.end());
}

std::vector<CveRecord> ingest_cves(std::istream& in, const std::string& source,
                                   const DependencyGraph& graph,
                                   CveDiagnostics* diagnostics) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(source, 0, e.what());
  }
  if (!doc.is_array()) throw FormatError(source, 0, "expected a JSON array");

  std::vector<CveRecord> out;
  out.reserve(doc.size());
  for (const auto& adv : doc) {
    try {
      if (!adv.is_object()) throw FormatError(source, 0, "advisory must be an object");
      CveRecord cve;
      cve.id = optional_string(adv, "id", source);
      const auto published = parse_iso_date(optional_string(adv, "published", source));
      if (!published) {
        throw FormatError(source, 0, cve.id + ": invalid 'published' date");
      }
      cve.published_at = *published;
      if (adv.contains("severity") && adv["severity"].is_string()) {
        cve.severity = adv["severity"].get<std::string>();
      }
      const auto& affected = adv.at("affected");
      if (!affected.is_array() || affected.empty()) {
        throw FormatError(source, 0, cve.id + ": 'affected' must be a non-empty array");
      }
      for (const auto& entry : affected) {
        AffectedPackage pkg;
        pkg.package = optional_string(entry, "package", source);
        if (entry.contains("versions")) {
          pkg.versions = entry["versions"].get<std::vector<std::string>>();
        }
        if (entry.contains("introduced")) {
          pkg.introduced = optional_string(entry, "introduced", source);
        }
        if (entry.contains("fixed")) {
          pkg.fixed = optional_string(entry, "fixed", source);
        }
        cve.affected.push_back(std::move(pkg));
      }
      expand_affected(cve, graph, diagnostics);
      out.push_back(std::move(cve));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(source, 0, e.what());
    } catch (const UnparseableVersion& e) {
      throw FormatError(source, 0, e.what());
    }
  }
  return out;
}

std::vector<CveRecord> ingest_cves(const std::string& path,
                                   const DependencyGraph& graph,
                                   CveDiagnostics* diagnostics) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return ingest_cves(in, path, graph, diagnostics);
}

void link_affected(DependencyGraph& graph, std::span<const CveRecord> cves) {
  for (const auto& cve : cves) {
    for (const ReleaseId id : cve.affected_releases) {
      graph.add_affected({cve.id, id, 0});
    }
  }
}

void write_cves_json(std::ostream& out, std::span<const CveRecord> cves) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& cve : cves) {
    nlohmann::ordered_json adv;
    adv["id"] = cve.id;
    adv["published"] = format_iso_date(cve.published_at);
    if (cve.severity) adv["severity"] = *cve.severity;
    auto& affected = adv["affected"] = nlohmann::ordered_json::array();
    for (const auto& pkg : cve.affected) {
      nlohmann::ordered_json entry;
      entry["package"] = pkg.package;
      if (!pkg.versions.empty()) entry["versions"] = pkg.versions;
      if (pkg.introduced) entry["introduced"] = *pkg.introduced;
      if (pkg.fixed) entry["fixed"] = *pkg.fixed;
      affected.push_back(std::move(entry));
    }
    doc.push_back(std::move(adv));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace vulnlife
