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

#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vulnlife/error.hpp"
#include "vulnlife/random.hpp"

namespace vulnlife {
namespace {

class GraphBuilder {
 public:
  GraphBuilder& release(const std::string& artifact, const std::string& version,
                        Day day) {
    releases_.push_back({artifact, parse_version(version), day});
    return *this;
  }
  GraphBuilder& dep(const std::string& from, const std::string& from_version,
                    const std::string& to, const std::string& to_version) {
    deps_.push_back({from, from_version, to, to_version, 0});
    return *this;
  }
  DependencyGraph build() {
    auto g = DependencyGraph::build(releases_, deps_);
    g.compute_next_edges();
    return g;
  }

 private:
  std::vector<Release> releases_;
  std::vector<DependencyRow> deps_;
};

CveRecord Cve(const DependencyGraph& g, Day published,
              std::vector<std::pair<std::string, std::string>> affected) {
  CveRecord cve;
  cve.id = "CVE-T";
  cve.published_at = published;
  for (const auto& [artifact, version] : affected) {
    cve.affected_releases.push_back(*g.find(artifact, version));
  }
  std::sort(cve.affected_releases.begin(), cve.affected_releases.end());
  return cve;
}

const LifetimeSample* Find(const std::vector<LifetimeSample>& samples,
                           const std::string& artifact) {
  for (const auto& s : samples) {
    if (s.artifact_id == artifact) return &s;
  }
  return nullptr;
}

TEST(MarkDirect, YoungestAffectedVersion) {
  const auto g = GraphBuilder()
                     .release("A", "1.0", 0)
                     .release("A", "1.1", 1)
                     .release("A", "1.2", 2)
                     .release("A", "1.3", 3)
                     .build();
  const auto marks = mark_direct(g, Cve(g, 0, {{"A", "1.0"}, {"A", "1.1"}, {"A", "1.2"}}));
  ASSERT_EQ(marks.size(), 1u);
  EXPECT_EQ(g.release(marks[0].release).version.raw(), "1.2");
  ASSERT_TRUE(marks[0].fix.has_value());
  EXPECT_EQ(g.release(*marks[0].fix).version.raw(), "1.3");
}

TEST(MarkDirect, NoSuccessorAndTwoArtifacts) {
  const auto g = GraphBuilder().release("A", "1.0", 0).release("B", "3.0", 0).build();
  const auto one = mark_direct(g, Cve(g, 0, {{"A", "1.0"}}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_FALSE(one[0].fix.has_value());
  EXPECT_EQ(mark_direct(g, Cve(g, 0, {{"A", "1.0"}, {"B", "3.0"}})).size(), 2u);
}

TEST(MarkDirect, RequiresSuccessorEdges) {
  const std::vector<Release> releases{{"A", parse_version("1.0"), 0}};
  const auto g = DependencyGraph::build(releases, {});
  CveRecord cve;
  cve.affected_releases = {0};
  EXPECT_THROW(mark_direct(g, cve), DataError);
}

TEST(Propagate, ChainHandTrace) {
  const auto g = GraphBuilder()
                     .release("A", "1.0", 0)
                     .release("A", "1.1", 10)
                     .release("B", "2.0", 3)
                     .release("B", "2.1", 50)
                     .dep("B", "2.0", "A", "1.0")
                     .build();
  const auto samples = propagate(g, Cve(g, 0, {{"A", "1.0"}}));
  ASSERT_EQ(samples.size(), 2u);
  const auto* a = Find(samples, "A");
  EXPECT_EQ(a->level, 0);
  EXPECT_EQ(a->level_days, 10);
  EXPECT_EQ(a->cumulative_days, 10);
  const auto* b = Find(samples, "B");
  EXPECT_EQ(b->level, 1);
  EXPECT_EQ(b->level_days, 47);
  EXPECT_EQ(b->cumulative_days, 50);
  EXPECT_FALSE(b->censored);
  EXPECT_EQ(b->fixed_at, 50);
}

TEST(Propagate, DiamondTakesShortestPath) {
  const auto g = GraphBuilder()
                     .release("A", "1.0", 0)
                     .release("B", "1.0", 1)
                     .release("C", "1.0", 1)
                     .release("E", "1.0", 2)
                     .release("D", "1.0", 3)
                     .dep("B", "1.0", "A", "1.0")
                     .dep("D", "1.0", "B", "1.0")
                     .dep("C", "1.0", "A", "1.0")
                     .dep("E", "1.0", "C", "1.0")
                     .dep("D", "1.0", "E", "1.0")
                     .build();
  const auto samples = propagate(g, Cve(g, 0, {{"A", "1.0"}}));
  EXPECT_EQ(samples.size(), 5u);
  EXPECT_EQ(Find(samples, "D")->level, 2);
  EXPECT_EQ(Find(samples, "E")->level, 2);
}

TEST(Propagate, CensoredAtObservationEnd) {
  const auto g = GraphBuilder()
                     .release("A", "1.0", 0)
                     .release("A", "1.1", 10)
                     .release("B", "2.0", 5)
                     .release("Z", "1.0", 100)
                     .dep("B", "2.0", "A", "1.0")
                     .build();
  const auto samples = propagate(g, Cve(g, 2, {{"A", "1.0"}}));
  const auto* b = Find(samples, "B");
  ASSERT_NE(b, nullptr);
  EXPECT_TRUE(b->censored);
  EXPECT_EQ(b->level, 1);
  EXPECT_EQ(b->level_days, 95);
  EXPECT_EQ(b->cumulative_days, 98);
  EXPECT_FALSE(b->fixed_at.has_value());

  PropagationOptions options;
  options.observation_end = 60;
  EXPECT_EQ(Find(propagate(g, Cve(g, 2, {{"A", "1.0"}}), options), "B")->level_days, 55);
}

TEST(Propagate, YoungestReleasePerArtifactPerLevel) {
  const auto g = GraphBuilder()
                     .release("A", "1.0", 0)
                     .release("A", "1.1", 20)
                     .release("B", "1.0", 2)
                     .release("B", "2.0", 4)
                     .release("B", "2.1", 30)
                     .dep("B", "1.0", "A", "1.0")
                     .dep("B", "2.0", "A", "1.0")
                     .build();
  const auto samples = propagate(g, Cve(g, 0, {{"A", "1.0"}}));
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(Find(samples, "B")->version, "2.0");
  EXPECT_EQ(Find(samples, "B")->level_days, 26);
}

TEST(Propagate, MaxLevelTruncates) {
  GraphBuilder b;
  b.release("L0", "1.0", 0);
  for (int i = 1; i <= 5; ++i) {
    b.release("L" + std::to_string(i), "1.0", i);
    b.dep("L" + std::to_string(i), "1.0", "L" + std::to_string(i - 1), "1.0");
  }
  const auto g = b.build();
  PropagationOptions options;
  options.max_level = 2;
  EXPECT_EQ(propagate(g, Cve(g, 0, {{"L0", "1.0"}}), options).size(), 3u);
  options.max_level = 0;
  EXPECT_EQ(propagate(g, Cve(g, 0, {{"L0", "1.0"}}), options).size(), 1u);
  options.max_level = -1;
  EXPECT_THROW(propagate(g, Cve(g, 0, {{"L0", "1.0"}}), options), DataError);
}

TEST(Propagate, LevelsMatchRelaxationOracleOnRandomDags) {
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    Rng rng(derive_seed(11, trial));
    const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform_int(0, 40));
    GraphBuilder b;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    auto name = [](std::size_t i) { return "n" + std::to_string(1000 + i); };
    for (std::size_t i = 0; i < n; ++i) b.release(name(i), "1.0", static_cast<Day>(i));
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (rng.uniform() < 0.12) {
          b.dep(name(i), "1.0", name(j), "1.0");
          edges.emplace_back(j, i);
        }
      }
    }
    const auto g = b.build();
    std::vector<std::size_t> sources;
    std::vector<std::pair<std::string, std::string>> affected;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < 0.15) {
        sources.push_back(i);
        affected.emplace_back(name(i), "1.0");
      }
    }
    if (sources.empty()) continue;
    const auto expected = oracle::relaxation_distances(n, edges, sources);
    PropagationOptions options;
    options.max_level = static_cast<int>(n);
    const auto samples = propagate(g, Cve(g, 0, affected), options);
    std::size_t reached = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* s = Find(samples, name(i));
      if (expected[i] < 0) {
        EXPECT_EQ(s, nullptr) << "trial " << trial;
      } else {
        ++reached;
        ASSERT_NE(s, nullptr) << "trial " << trial;
        EXPECT_EQ(s->level, expected[i]) << "trial " << trial << " node " << i;
      }
    }
    EXPECT_EQ(samples.size(), reached);
  }
}

DependencyGraph Layered(std::vector<CveRecord>* cves) {
  GraphBuilder b;
  Rng rng(5);
  for (int level = 0; level < 4; ++level) {
    for (int i = 0; i < 15; ++i) {
      const std::string a = "L" + std::to_string(level) + "x" + std::to_string(i);
      const Day start = level * 10 + rng.uniform_int(0, 5);
      b.release(a, "1.0", start).release(a, "1.1", start + rng.uniform_int(1, 400));
      if (level > 0) {
        b.dep(a, "1.0", "L" + std::to_string(level - 1) + "x" + std::to_string(rng.uniform_int(0, 14)),
              "1.0");
      }
    }
  }
  auto g = b.build();
  for (int i = 0; i < 15; ++i) {
    auto cve = Cve(g, i, {{"L0x" + std::to_string(i), "1.0"}});
    cve.id = "CVE-" + std::to_string(100 + i);
    cves->push_back(cve);
  }
  return g;
}

std::string ToCsv(const std::vector<LifetimeSample>& samples) {
  std::ostringstream out;
  write_samples_csv(out, samples);
  return out.str();
}

TEST(PropagateAll, IndependentOfWorkerCountAndDeterministic) {
  std::vector<CveRecord> cves;
  const auto g = Layered(&cves);
  const auto one = ToCsv(propagate_all(g, cves, {}, 1));
  EXPECT_EQ(one, ToCsv(propagate_all(g, cves, {}, 3)));
  EXPECT_EQ(one, ToCsv(propagate_all(g, cves, {}, 8)));
  EXPECT_EQ(one, ToCsv(propagate_all(g, cves, {}, 1)));
  EXPECT_TRUE(propagate_all(g, {}, {}, 2).empty());
}

TEST(FilterSamples, DropsNegativeIntervals) {
  auto make = [](std::int64_t cumulative, std::int64_t level) {
    LifetimeSample s;
    s.cve_id = "C";
    s.artifact_id = "A";
    s.cumulative_days = cumulative;
    s.level_days = level;
    return s;
  };
  FilterReport report;
  auto kept = filter_samples({make(3, -4), make(-1, 5), make(0, 0), make(7, 2)}, &report);
  EXPECT_EQ(kept.size(), 2u);
  EXPECT_EQ(report.input, 4u);
  EXPECT_EQ(report.negative_level, 1u);
  EXPECT_EQ(report.negative_cumulative, 1u);
  EXPECT_EQ(report.retained, 2u);

  const std::vector<LifetimeSample> clean{make(1, 1), make(5, 0)};
  EXPECT_EQ(ToCsv(filter_samples(clean)), ToCsv(clean));
}

TEST(SamplesCsv, RoundTrip) {
  std::vector<CveRecord> cves;
  const auto g = Layered(&cves);
  const auto samples = propagate_all(g, cves, {}, 2);
  ASSERT_FALSE(samples.empty());
  const auto text = ToCsv(samples);
  std::istringstream in(text);
  const auto again = read_samples_csv(in, "samples.csv");
  EXPECT_EQ(ToCsv(again), text);

  std::istringstream bad("cve_id,artifact_id,level,cumulative_days,level_days,censored\n"
                         "C,A,x,1,1,0\n");
  EXPECT_THROW(read_samples_csv(bad, "bad.csv"), FormatError);
  std::istringstream flags("cve_id,artifact_id,level,cumulative_days,level_days,censored\n"
                           "C,A,1,1,1,true\n");
  EXPECT_TRUE(read_samples_csv(flags, "ok.csv").at(0).censored);
  EXPECT_THROW(parse_duration_field("weekly"), DataError);
}

}  // namespace
}  // namespace vulnlife
