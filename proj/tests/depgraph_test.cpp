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

#include <sstream>

#include <gtest/gtest.h>

#include "vulnlife/error.hpp"
#include "vulnlife/random.hpp"

namespace vulnlife {
namespace {

DependencyGraph Ingest(const std::string& releases, const std::string& deps,
                       IngestDiagnostics* diag = nullptr) {
  std::istringstream r(releases);
  std::istringstream d(deps);
  return ingest_graph(r, d, diag);
}

const char* kHeader = "artifact_id,version,released_at\n";
const char* kDepHeader = "from_artifact,from_version,to_artifact,to_version\n";

std::string Dump(const DependencyGraph& g) {
  std::ostringstream out;
  write_releases_csv(out, g);
  write_deps_csv(out, g);
  write_next_edges_csv(out, g);
  return out.str();
}

TEST(IngestGraph, WellFormed) {
  IngestDiagnostics diag;
  const auto g = Ingest(std::string(kHeader) +
                            "g:a,1.0,2020-01-01\n"
                            "g:b,2.0,2020-02-01\n"
                            "g:c,3.0,2020-03-01\n",
                        std::string(kDepHeader) +
                            "g:b,2.0,g:a,1.0\n"
                            "g:c,3.0,g:b,2.0\n",
                        &diag);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.dep_edge_count(), 2u);
  EXPECT_EQ(diag.dropped_edges, 0u);
  const auto a = *g.find("g:a", "1.0");
  const auto b = *g.find("g:b", "2.0");
  EXPECT_EQ(g.dependents(a).size(), 1u);
  EXPECT_EQ(g.dependents(a)[0], b);
  EXPECT_EQ(g.release(a).released_at, *parse_iso_date("2020-01-01"));
  EXPECT_EQ(g.observation_end(), *parse_iso_date("2020-03-01"));
}

TEST(IngestGraph, DanglingEdgeDropped) {
  IngestDiagnostics diag;
  const auto g = Ingest(std::string(kHeader) + "g:a,1.0,2020-01-01\n",
                        std::string(kDepHeader) + "g:a,1.0,g:zzz,9.9\n", &diag);
  EXPECT_EQ(g.dep_edge_count(), 0u);
  EXPECT_EQ(diag.dropped_edges, 1u);
  ASSERT_EQ(diag.messages.size(), 1u);
  EXPECT_NE(diag.messages[0].find("g:zzz:9.9"), std::string::npos);
}

TEST(IngestGraph, SelfDependencyIsCycle) {
  try {
    Ingest(std::string(kHeader) + "A,1.0,2020-01-01\n",
           std::string(kDepHeader) + "A,1.0,A,1.0\n");
    FAIL() << "expected CycleDetected";
  } catch (const CycleDetected& e) {
    EXPECT_EQ(e.path(), (std::vector<std::string>{"A:1.0", "A:1.0"}));
  }
}

TEST(IngestGraph, ReleaseCycleReportsPath) {
  try {
    Ingest(std::string(kHeader) +
               "A,1.0,2020-01-01\nB,1.0,2020-01-01\nC,1.0,2020-01-01\n",
           std::string(kDepHeader) + "A,1.0,B,1.0\nB,1.0,C,1.0\nC,1.0,A,1.0\n");
    FAIL() << "expected CycleDetected";
  } catch (const CycleDetected& e) {
    ASSERT_EQ(e.path().size(), 4u);
    EXPECT_EQ(e.path().front(), e.path().back());
  }
}

TEST(IngestGraph, ArtifactLevelCycleAllowed) {
  const auto g = Ingest(std::string(kHeader) +
                            "A,1.0,2020-01-01\nA,2.0,2020-06-01\n"
                            "B,1.0,2020-03-01\n",
                        std::string(kDepHeader) + "B,1.0,A,1.0\nA,2.0,B,1.0\n");
  EXPECT_EQ(g.dep_edge_count(), 2u);
}

TEST(IngestGraph, FormatErrors) {
  try {
    Ingest(std::string(kHeader) + "A,1.0,2020-01-01\nA,1.0,2020-01-02\n",
           kDepHeader);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    Ingest(std::string(kHeader) + "A,1.0,2020-13-01\n", kDepHeader);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(Ingest(std::string(kHeader) + "A,snapshot,2020-01-01\n", kDepHeader),
               FormatError);
  EXPECT_THROW(Ingest("artifact,version\nA,1.0\n", kDepHeader), FormatError);
  EXPECT_THROW(Ingest(std::string(kHeader) + "A,1.0\n", kDepHeader), FormatError);
}

TEST(IngestGraph, IdempotentAndOrderIndependent) {
  const std::string releases = std::string(kHeader) +
                               "g:b,1.0,2020-01-05\n"
                               "g:a,1.1,2020-02-01\n"
                               "g:a,1.0,2020-01-01\n";
  const std::string shuffled = std::string(kHeader) +
                               "g:a,1.0,2020-01-01\n"
                               "g:b,1.0,2020-01-05\n"
                               "g:a,1.1,2020-02-01\n";
  const std::string deps = std::string(kDepHeader) +
                           "g:b,1.0,g:a,1.0\n"
                           "g:b,1.0,g:a,1.0\n";
  auto g1 = Ingest(releases, deps);
  auto g2 = Ingest(releases, deps);
  IngestDiagnostics diag;
  auto g3 = Ingest(shuffled, deps, &diag);
  EXPECT_EQ(diag.duplicate_edges, 1u);
  g1.compute_next_edges();
  g2.compute_next_edges();
  g3.compute_next_edges();
  EXPECT_EQ(Dump(g1), Dump(g2));
  EXPECT_EQ(Dump(g1), Dump(g3));
}

TEST(IngestGraph, WrittenCsvReingests) {
  auto g = Ingest(std::string(kHeader) +
                      "\"g:a\",1.0,2020-01-01\ng:b,2.0-rc1,2021-12-31T10:00:00Z\n",
                  std::string(kDepHeader) + "g:b,2.0-rc1,g:a,1.0\n");
  std::ostringstream r;
  std::ostringstream d;
  write_releases_csv(r, g);
  write_deps_csv(d, g);
  const auto again = Ingest(r.str(), d.str());
  EXPECT_EQ(Dump(g), Dump(again));
}

DependencyGraph VersionsOf(const std::vector<std::string>& versions) {
  std::string rows = kHeader;
  int day = 1;
  for (const auto& v : versions) {
    rows += "A," + v + ",2020-01-" + (day < 10 ? "0" : "") + std::to_string(day) + "\n";
    ++day;
  }
  return Ingest(rows, kDepHeader);
}

std::string NextOf(const DependencyGraph& g, const char* version) {
  const auto n = g.next(*g.find("A", version));
  return n ? g.release(*n).version.raw() : "none";
}

TEST(NextEdges, SortAndLink) {
  auto g = VersionsOf({"2.0", "1.0", "1.1"});
  const auto stats = g.compute_next_edges();
  EXPECT_EQ(NextOf(g, "1.0"), "1.1");
  EXPECT_EQ(NextOf(g, "1.1"), "2.0");
  EXPECT_EQ(NextOf(g, "2.0"), "none");
  EXPECT_EQ(stats.with_successor, 2u);
  EXPECT_EQ(stats.heuristic_agreement, 2u);
}

TEST(NextEdges, SingleVersionAndQualifier) {
  auto single = VersionsOf({"1.0"});
  single.compute_next_edges();
  EXPECT_EQ(NextOf(single, "1.0"), "none");

  auto rc = VersionsOf({"1.0", "1.0-rc1"});
  rc.compute_next_edges();
  EXPECT_EQ(NextOf(rc, "1.0-rc1"), "1.0");
  EXPECT_EQ(NextOf(rc, "1.0"), "none");
}

TEST(NextEdges, ChainsAreStrictlyIncreasingAndTerminate) {
  Rng rng(3);
  std::string rows = kHeader;
  for (int a = 0; a < 20; ++a) {
    for (int i = 0; i < 8; ++i) {
      rows += "art" + std::to_string(a) + "," + std::to_string(rng.uniform_int(0, 3)) +
              "." + std::to_string(rng.uniform_int(0, 5)) + "." +
              std::to_string(i) + ",2020-01-0" + std::to_string(1 + rng.uniform_int(0, 8)) +
              "\n";
    }
  }
  auto g = Ingest(rows, kDepHeader);
  g.compute_next_edges();
  for (ReleaseId id = 0; id < g.size(); ++id) {
    std::size_t steps = 0;
    ReleaseId at = id;
    while (const auto n = g.next(at)) {
      EXPECT_EQ(g.release(*n).artifact_id, g.release(at).artifact_id);
      EXPECT_LT(g.release(at).version, g.release(*n).version);
      at = *n;
      ASSERT_LE(++steps, g.size());
    }
  }
}

class CveIngest : public ::testing::Test {
 protected:
  void SetUp() override {
    graph_ = Ingest(std::string(kHeader) +
                        "g:a,1.0,2020-01-01\ng:a,1.1,2020-02-01\n"
                        "g:r,1.0,2020-01-01\ng:r,1.5,2020-02-01\ng:r,2.0,2020-03-01\n",
                    kDepHeader);
  }

  std::vector<CveRecord> Parse(const std::string& text, CveDiagnostics* diag = nullptr) {
    std::istringstream in(text);
    return ingest_cves(in, "cves.json", graph_, diag);
  }

  std::vector<std::string> Versions(const CveRecord& cve) {
    std::vector<std::string> out;
    for (const auto id : cve.affected_releases) {
      out.push_back(graph_.release(id).version.raw());
    }
    return out;
  }

  DependencyGraph graph_;
};

TEST_F(CveIngest, ExplicitVersions) {
  const auto cves = Parse(R"([{"id":"CVE-1","published":"2020-01-15T00:00:00Z",
      "affected":[{"package":"g:a","versions":["1.0","1.1"]}]}])");
  ASSERT_EQ(cves.size(), 1u);
  EXPECT_EQ(cves[0].published_at, *parse_iso_date("2020-01-15"));
  EXPECT_EQ(Versions(cves[0]), (std::vector<std::string>{"1.0", "1.1"}));
}

TEST_F(CveIngest, RangeExpansion) {
  // Known {1.0, 1.5, 2.0}; [introduced 0, fixed 2.0) keeps 1.0 and 1.5.
  const auto cves = Parse(R"([{"id":"CVE-2","published":"2020-01-15",
      "affected":[{"package":"g:r","introduced":"0","fixed":"2.0"}]}])");
  EXPECT_EQ(Versions(cves[0]), (std::vector<std::string>{"1.0", "1.5"}));

  const auto lower = Parse(R"([{"id":"CVE-3","published":"2020-01-15",
      "affected":[{"package":"g:r","introduced":"1.5"}]}])");
  EXPECT_EQ(Versions(lower[0]), (std::vector<std::string>{"1.5", "2.0"}));
}

TEST_F(CveIngest, EmptyListAndUnknownArtifact) {
  EXPECT_TRUE(Parse("[]").empty());
  CveDiagnostics diag;
  const auto cves = Parse(R"([{"id":"CVE-4","published":"2020-01-15",
      "affected":[{"package":"g:missing","versions":["1.0"]}]}])", &diag);
  ASSERT_EQ(cves.size(), 1u);
  EXPECT_TRUE(cves[0].affected_releases.empty());
  ASSERT_EQ(diag.unknown_artifacts.size(), 1u);
}

TEST_F(CveIngest, FormatErrors) {
  EXPECT_THROW(Parse("{"), FormatError);
  EXPECT_THROW(Parse(R"({"id":"x"})"), FormatError);
  EXPECT_THROW(Parse(R"([{"id":"x","published":"yesterday","affected":[{"package":"g:a"}]}])"),
               FormatError);
  EXPECT_THROW(Parse(R"([{"id":"x","published":"2020-01-01","affected":[]}])"),
               FormatError);
  EXPECT_THROW(Parse(R"([{"published":"2020-01-01","affected":[{"package":"g:a"}]}])"),
               FormatError);
}

TEST_F(CveIngest, LinkedEdgesTargetExistingReleases) {
  const auto cves = Parse(R"([{"id":"CVE-5","published":"2020-01-15",
      "affected":[{"package":"g:r","introduced":"0"},{"package":"g:a","versions":["1.0"]}]}])");
  link_affected(graph_, cves);
  EXPECT_EQ(graph_.affected_edges().size(), 4u);
  for (const auto& e : graph_.affected_edges()) {
    EXPECT_LT(e.release, graph_.size());
    EXPECT_EQ(e.level, 0);
  }
}

TEST_F(CveIngest, JsonWriterRoundTrips) {
  const auto cves = Parse(R"([{"id":"CVE-6","published":"2020-01-15","severity":"HIGH",
      "affected":[{"package":"g:r","introduced":"1.0","fixed":"2.0"}]}])");
  std::ostringstream out;
  write_cves_json(out, cves);
  const auto again = Parse(out.str());
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(again[0].severity, "HIGH");
  EXPECT_EQ(again[0].affected_releases, cves[0].affected_releases);
}

}  // namespace
}  // namespace vulnlife
