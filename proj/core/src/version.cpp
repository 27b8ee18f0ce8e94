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
#include <cctype>
#include <charconv>

#include "vulnlife/error.hpp"

namespace vulnlife {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_separator(char c) {
  return c == '.' || c == '-' || c == '_' || c == '+';
}

struct QualifierToken {
  bool numeric;
  std::string_view text;
};

// "rc.10" -> [rc][10]; "beta2" -> [beta][2]. Separators are dropped.
std::vector<QualifierToken> tokenize(std::string_view q) {
  std::vector<QualifierToken> out;
  std::size_t i = 0;
  while (i < q.size()) {
    if (is_separator(q[i])) {
      ++i;
      continue;
    }
    const bool numeric = is_digit(q[i]);
    std::size_t j = i;
    while (j < q.size() && !is_separator(q[j]) && is_digit(q[j]) == numeric) {
      ++j;
    }
    out.push_back({numeric, q.substr(i, j - i)});
    i = j;
  }
  return out;
}

std::weak_ordering compare_numeric_text(std::string_view a,
                                        std::string_view b) {
  auto strip = [](std::string_view s) {
    const auto nz = s.find_first_not_of('0');
    return nz == std::string_view::npos ? std::string_view{} : s.substr(nz);
  };
  a = strip(a);
  b = strip(b);
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.compare(b) <=> 0;
}

std::weak_ordering compare_qualifiers(std::string_view a, std::string_view b) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = ta[i];
    const auto& y = tb[i];
    if (x.numeric != y.numeric) {
      return x.numeric ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    const auto c = x.numeric ? compare_numeric_text(x.text, y.text)
                             : (x.text.compare(y.text) <=> 0);
    if (c != 0) return c;
  }
  return ta.size() <=> tb.size();
}

bool shares_prefix(const Version& v, const Version& ref, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (v.segment(i) != ref.segment(i)) return false;
  }
  return true;
}

template <typename Range, typename Proj>
std::optional<Version> min_greater(const Version& current, const Range& range,
                                   Proj proj) {
  const Version* best = nullptr;
  for (const auto& item : range) {
    const Version& v = proj(item);
    if (v > current && (best == nullptr || v < *best)) best = &v;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

}  // namespace

Version Version::parse(std::string_view text) {
  if (text.empty() || !is_digit(text.front())) {
    throw UnparseableVersion(std::string(text));
  }
  Version v;
  v.raw_ = std::string(text);
  std::size_t pos = 0;
  while (true) {
    std::uint64_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) throw UnparseableVersion(std::string(text));
    v.segments_.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos + 1 < text.size() && text[pos] == '.' && is_digit(text[pos + 1])) {
      ++pos;
      continue;
    }
    break;
  }
  std::string_view rest = text.substr(pos);
  if (!rest.empty() && is_separator(rest.front())) rest.remove_prefix(1);
  v.qualifier_ = std::string(rest);
  return v;
}

std::weak_ordering compare_precedence(const Version& a, const Version& b) {
  const std::size_t n = std::max(a.segments().size(), b.segments().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.segment(i) != b.segment(i)) return a.segment(i) <=> b.segment(i);
  }
  if (a.has_qualifier() != b.has_qualifier()) {
    return a.has_qualifier() ? std::weak_ordering::less
                             : std::weak_ordering::greater;
  }
  return compare_qualifiers(a.qualifier(), b.qualifier());
}

std::strong_ordering operator<=>(const Version& a, const Version& b) {
  const auto p = compare_precedence(a, b);
  if (p < 0) return std::strong_ordering::less;
  if (p > 0) return std::strong_ordering::greater;
  if (a.segments_.size() != b.segments_.size()) {
    return a.segments_.size() <=> b.segments_.size();
  }
  return a.raw_.compare(b.raw_) <=> 0;
}

std::optional<Version> semver_next(const Version& current,
                                   std::span<const Version> candidates) {
  return min_greater(current, candidates,
                     [](const Version& v) -> const Version& { return v; });
}

std::optional<Version> semver_next(const Version& current,
                                   std::span<const Candidate> candidates) {
  return min_greater(current, candidates,
                     [](const Candidate& c) -> const Version& {
                       return c.version;
                     });
}

std::optional<HeuristicChoice> heuristic_next(
    const Version& current, std::span<const Candidate> candidates) {
  const std::size_t n = current.segments().size();

  const Candidate* step1 = nullptr;
  const Candidate* step2 = nullptr;
  const Candidate* step3 = nullptr;
  for (const auto& c : candidates) {
    const Version& v = c.version;
    if (!(v > current)) continue;
    if (shares_prefix(v, current, n - 1)) {
      if (step1 == nullptr || v < step1->version) step1 = &c;
    }
    if (n >= 2 && shares_prefix(v, current, n - 2) &&
        v.segment(n - 2) == current.segment(n - 2) + 1) {
      if (step2 == nullptr || v < step2->version) step2 = &c;
    }
    if (step3 == nullptr || c.released_at < step3->released_at ||
        (c.released_at == step3->released_at && v < step3->version)) {
      step3 = &c;
    }
  }
  if (step1 != nullptr) return HeuristicChoice{step1->version, HeuristicStep::kSamePrefix};
  if (step2 != nullptr) return HeuristicChoice{step2->version, HeuristicStep::kNextPenultimate};
  if (step3 != nullptr) return HeuristicChoice{step3->version, HeuristicStep::kOldest};
  return std::nullopt;
}

std::optional<HeuristicChoice> heuristic_next(
    const Version& current, std::span<const Version> candidates) {
  std::vector<Candidate> timed;
  timed.reserve(candidates.size());
  for (const auto& v : candidates) timed.push_back({v, 0});
  return heuristic_next(current, std::span<const Candidate>(timed));
}

AgreementResult next_release_agreement(
    std::span<const NextReleaseCase> cases) {
  AgreementResult result;
  for (const auto& c : cases) {
    const auto by_semver = semver_next(c.current, c.candidates);
    if (!by_semver) {
      ++result.skipped;
      continue;
    }
    ++result.evaluated;
    const auto by_heuristic = heuristic_next(c.current, c.candidates);
    if (by_heuristic && by_heuristic->version == *by_semver) ++result.agreeing;
  }
  if (result.evaluated == 0) {
    throw EmptyInput("next-release corpus has no case with a newer candidate");
  }
  return result;
}

}  // namespace vulnlife
