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

#include "vulnlife/version.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "vulnlife/error.hpp"
#include "vulnlife/random.hpp"

namespace vulnlife {
namespace {

Version V(const char* s) { return Version::parse(s); }

std::vector<Version> Vs(std::initializer_list<const char*> list) {
  std::vector<Version> out;
  for (const char* s : list) out.push_back(V(s));
  return out;
}

TEST(VersionParse, NumericSegments) {
  const Version v = V("1.2.3");
  EXPECT_EQ(v.segments(), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_FALSE(v.has_qualifier());
  EXPECT_EQ(V("2.0").segments(), (std::vector<std::uint64_t>{2, 0}));
}

TEST(VersionParse, Qualifier) {
  const Version v = V("1.2.3-rc1");
  EXPECT_EQ(v.segments(), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(v.qualifier(), "rc1");
  EXPECT_EQ(V("2.0.Final").qualifier(), "Final");
  EXPECT_EQ(V("4.1b").qualifier(), "b");
  EXPECT_EQ(V("4.1b").segments(), (std::vector<std::uint64_t>{4, 1}));
}

TEST(VersionParse, RejectsNonNumericStart) {
  EXPECT_THROW(V(""), UnparseableVersion);
  EXPECT_THROW(V("v1.0"), UnparseableVersion);
  EXPECT_THROW(V("latest"), UnparseableVersion);
  EXPECT_THROW(V("99999999999999999999999.1"), UnparseableVersion);
}

TEST(VersionParse, RawRoundTrips) {
  for (const char* s : {"1.2.3", "1.0-SNAPSHOT", "3.0.0.RELEASE", "1."}) {
    EXPECT_EQ(V(V(s).raw().c_str()), V(s));
    EXPECT_EQ(V(s).raw(), s);
  }
}

// Ranks under the stated rule: qualified before bare, then numeric order.
TEST(VersionOrder, QualifierPairsEnumerated) {
  const std::vector<std::pair<const char*, int>> ranked = {
      {"1.2.3-rc1", 0}, {"1.2.3", 1}, {"1.2.4", 2}};
  for (const auto& [a, ra] : ranked) {
    for (const auto& [b, rb] : ranked) {
      EXPECT_EQ(V(a) < V(b), ra < rb) << a << " vs " << b;
      EXPECT_EQ(V(a) == V(b), ra == rb) << a << " vs " << b;
    }
  }
}

TEST(VersionOrder, PaddingAndNumericSegments) {
  EXPECT_LT(V("1.9.0"), V("1.10.0"));
  EXPECT_TRUE(compare_precedence(V("1.0"), V("1.0.0")) == 0);
  EXPECT_LT(V("1.0"), V("1.0.0"));  // strict tie break on segment count
  EXPECT_LT(V("1.0.0"), V("1.0.0.1"));
  EXPECT_LT(V("1.0-rc2"), V("1.0-rc10"));
  EXPECT_LT(V("1.0-alpha"), V("1.0-beta"));
  EXPECT_LT(V("1.0-1"), V("1.0-alpha"));
}

std::vector<Version> random_pool(std::uint64_t seed, std::size_t size) {
  Rng rng(seed);
  const char* qualifiers[] = {"", "", "", "-rc1", "-rc2", "-beta", ".Final"};
  std::vector<Version> pool;
  while (pool.size() < size) {
    std::string s = std::to_string(rng.uniform_int(0, 2));
    const auto segments = rng.uniform_int(1, 4);
    for (int i = 1; i < segments; ++i) {
      s += "." + std::to_string(rng.uniform_int(0, 3));
    }
    s += qualifiers[rng.uniform_int(0, 6)];
    Version v = V(s.c_str());
    if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
  }
  return pool;
}

TEST(VersionOrder, StrictTotalOrderOnRandomPool) {
  const auto pool = random_pool(11, 50);
  for (const auto& a : pool) {
    EXPECT_FALSE(a < a);
    for (const auto& b : pool) {
      if (a == b) continue;
      EXPECT_NE(a < b, b < a) << a.raw() << " " << b.raw();
      for (const auto& c : pool) {
        if (a < b && b < c) EXPECT_LT(a, c);
      }
    }
  }
}

TEST(SemverNext, Examples) {
  EXPECT_EQ(semver_next(V("1.2.3"), Vs({"1.2.4", "1.3.0", "2.0.0"}))->raw(), "1.2.4");
  EXPECT_FALSE(semver_next(V("2.0.0"), Vs({"1.9.9"})));
}

TEST(SemverNext, MatchesSortOracle) {
  auto candidates = Vs({"1.9.0", "1.11.0"});
  EXPECT_EQ(semver_next(V("1.10.0"), candidates)->raw(), "1.11.0");

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto pool = random_pool(seed, 30);
    std::vector<Version> sorted = pool;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& current : pool) {
      const auto it = std::upper_bound(sorted.begin(), sorted.end(), current);
      const auto got = semver_next(current, pool);
      ASSERT_EQ(got.has_value(), it != sorted.end());
      if (got) EXPECT_EQ(*got, *it);
    }
  }
}

TEST(HeuristicNext, ThreeSteps) {
  auto r1 = heuristic_next(V("1.2.3"), Vs({"1.2.4", "2.0.0"}));
  ASSERT_TRUE(r1);
  EXPECT_EQ(r1->version.raw(), "1.2.4");
  EXPECT_EQ(r1->step, HeuristicStep::kSamePrefix);

  auto r2 = heuristic_next(V("1.2.3"), Vs({"1.3.0", "2.0.0"}));
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->version.raw(), "1.3.0");
  EXPECT_EQ(r2->step, HeuristicStep::kNextPenultimate);

  auto r3 = heuristic_next(V("1.2.3"), Vs({"2.0.0"}));
  ASSERT_TRUE(r3);
  EXPECT_EQ(r3->version.raw(), "2.0.0");
  EXPECT_EQ(r3->step, HeuristicStep::kOldest);
}

TEST(HeuristicNext, FallbackPrefersOldestRelease) {
  const std::vector<Candidate> c = {{V("3.0.0"), 100}, {V("2.0.0"), 200},
                                    {V("2.5.0"), 100}};
  const auto r = heuristic_next(V("1.2.3"), c);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->step, HeuristicStep::kOldest);
  EXPECT_EQ(r->version.raw(), "2.5.0");  // tie at day 100 broken by version
}

TEST(HeuristicNext, ResetMinorPicksSmallestLastSegment) {
  const std::vector<Candidate> c = {{V("1.4.0"), 10}, {V("1.3.5"), 20}};
  const auto r = heuristic_next(V("1.2.3"), c);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->version.raw(), "1.3.5");
}

TEST(HeuristicNext, NoneIffNothingGreater) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pool = random_pool(seed + 100, 25);
    for (const auto& current : pool) {
      const bool any_greater = std::any_of(
          pool.begin(), pool.end(), [&](const Version& v) { return v > current; });
      const auto h = heuristic_next(current, pool);
      EXPECT_EQ(h.has_value(), any_greater);
      if (h) EXPECT_GT(h->version, current);
    }
  }
}

TEST(HeuristicNext, AgreesWithSemverWhenSamePrefixCandidateExists) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto pool = random_pool(seed + 500, 30);
    for (const auto& current : pool) {
      const auto h = heuristic_next(current, pool);
      if (!h || h->step != HeuristicStep::kSamePrefix) continue;
      EXPECT_EQ(h->version, *semver_next(current, pool)) << current.raw();
    }
  }
}

TEST(Agreement, AllPatchSuccessors) {
  std::vector<NextReleaseCase> cases;
  cases.push_back({V("1.2.3"), {{V("1.2.4"), 1}, {V("1.3.0"), 2}}});
  cases.push_back({V("2.0.0"), {{V("2.0.1"), 1}, {V("3.0.0"), 2}}});
  const auto r = next_release_agreement(cases);
  EXPECT_EQ(r.evaluated, 2u);
  EXPECT_DOUBLE_EQ(r.ratio(), 1.0);
}

TEST(Agreement, ResetMinorCase) {
  std::vector<NextReleaseCase> cases;
  cases.push_back({V("1.2.3"), {{V("1.4.0"), 100}, {V("1.3.5"), 200}}});
  EXPECT_EQ(semver_next(cases[0].current, cases[0].candidates)->raw(), "1.3.5");
  EXPECT_DOUBLE_EQ(next_release_agreement(cases).ratio(), 1.0);
}

TEST(Agreement, DisagreementAndEmpty) {
  // 1.2.3 -> {2.0.0 released first, 1.5.0}: semver takes 1.5.0, the
  // heuristic falls through to step 3 and takes the older 2.0.0.
  std::vector<NextReleaseCase> cases;
  cases.push_back({V("1.2.3"), {{V("2.0.0"), 10}, {V("1.5.0"), 20}}});
  cases.push_back({V("9.0.0"), {{V("1.0.0"), 10}}});
  const auto r = next_release_agreement(cases);
  EXPECT_EQ(r.evaluated, 1u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_DOUBLE_EQ(r.ratio(), 0.0);

  EXPECT_THROW(next_release_agreement({}), EmptyInput);
  std::vector<NextReleaseCase> none = {{V("2.0"), {{V("1.0"), 1}}}};
  EXPECT_THROW(next_release_agreement(none), EmptyInput);
}

}  // namespace
}  // namespace vulnlife
