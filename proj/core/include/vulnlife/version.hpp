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

// Version identifiers and successor selection.
//
// Versions are parsed loosely: a run of dot-separated numeric segments
// followed by an optional free-form qualifier ("1.2.3-rc1", "2.0.Final",
// "4.1b"). Comparison pads the shorter segment list with zeros and places a
// qualified version before the bare version with the same segments, which is
// the SemVer pre-release convention. Two versions that are equal under those
// rules ("1.0" and "1.0.0") are further ordered by segment count and then by
// raw text, so the order is strict and total over distinct strings.

#ifndef VULNLIFE_VERSION_HPP_
#define VULNLIFE_VERSION_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vulnlife {

class Version {
 public:
  // Throws UnparseableVersion when `text` does not start with a digit.
  static Version parse(std::string_view text);

  const std::vector<std::uint64_t>& segments() const noexcept {
    return segments_;
  }
  const std::string& qualifier() const noexcept { return qualifier_; }
  bool has_qualifier() const noexcept { return !qualifier_.empty(); }
  const std::string& raw() const noexcept { return raw_; }

  // Segment `i`, zero beyond the parsed length.
  std::uint64_t segment(std::size_t i) const noexcept {
    return i < segments_.size() ? segments_[i] : 0;
  }

  friend std::strong_ordering operator<=>(const Version& a, const Version& b);
  friend bool operator==(const Version& a, const Version& b) {
    return a.raw_ == b.raw_;
  }

 private:
  std::vector<std::uint64_t> segments_;
  std::string qualifier_;
  std::string raw_;
};

// Precedence only (padded segments, then qualifier); ignores the
// segment-count and raw-text tie breaks. "1.0" and "1.0.0" are equivalent.
std::weak_ordering compare_precedence(const Version& a, const Version& b);

inline Version parse_version(std::string_view text) {
  return Version::parse(text);
}

// A sibling release considered as a successor; `released_at` is in days.
struct Candidate {
  Version version;
  std::int64_t released_at = 0;
};

// Smallest candidate strictly greater than `current`.
std::optional<Version> semver_next(const Version& current,
                                   std::span<const Version> candidates);
std::optional<Version> semver_next(const Version& current,
                                   std::span<const Candidate> candidates);

enum class HeuristicStep { kSamePrefix = 1, kNextPenultimate = 2, kOldest = 3 };

struct HeuristicChoice {
  Version version;
  HeuristicStep step;
};

// Three-step successor rule:
//  1. smallest greater candidate that shares every segment of `current`
//     except the last one;
//  2. otherwise, smallest candidate whose penultimate segment is one more
//     than current's (earlier segments equal), i.e. the reset-minor bump;
//  3. otherwise, the earliest released greater candidate, ties by version.
// Returns nullopt iff no candidate is greater than `current`.
std::optional<HeuristicChoice> heuristic_next(
    const Version& current, std::span<const Candidate> candidates);

// Without timestamps step 3 degenerates to version order.
std::optional<HeuristicChoice> heuristic_next(
    const Version& current, std::span<const Version> candidates);

struct NextReleaseCase {
  Version current;
  std::vector<Candidate> candidates;
};

struct AgreementResult {
  std::size_t evaluated = 0;  // cases with at least one greater candidate
  std::size_t agreeing = 0;
  std::size_t skipped = 0;    // cases without a greater candidate
  double ratio() const {
    return evaluated ? static_cast<double>(agreeing) / evaluated : 0.0;
  }
};

// Fraction of cases where semver_next and heuristic_next pick the same
// version. Throws EmptyInput when no case has a greater candidate.
AgreementResult next_release_agreement(std::span<const NextReleaseCase> cases);

}  // namespace vulnlife

#endif  // VULNLIFE_VERSION_HPP_
