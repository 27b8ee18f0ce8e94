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

// Gamma resolution-time model: a vulnerability at dependency depth d is
// resolved at rate beta(d) = k / (d + c), and its resolution time is the sum
// of `alpha` exponential stages, i.e. Gamma(alpha, beta(d)). The expected
// time alpha (d + c) / k is therefore linear in depth.

#ifndef VULNLIFE_MODEL_HPP_
#define VULNLIFE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vulnlife/date.hpp"
#include "vulnlife/depgraph.hpp"
#include "vulnlife/random.hpp"

namespace vulnlife {

// Defaults are illustrative, not estimates: they put the depth-0 mean at 100
// days and add 100 days per level.
struct ModelParams {
  double alpha = 2.0;  // number of resolution stages (shape)
  double k = 0.02;     // base resolution rate per day
  double c = 1.0;      // depth offset

  // Throws DataError unless alpha > 0, k > 0 and c >= 0.
  void validate() const;
  bool integer_alpha() const;
};

// Throws DataError when depth + c == 0.
double resolution_rate(const ModelParams& params, int depth);
double expected_resolution(const ModelParams& params, int depth);
double resolution_variance(const ModelParams& params, int depth);

enum class SamplingMode {
  kAuto,       // stage-wise for integer alpha, direct otherwise
  kStageWise,  // sum of alpha exponential draws; integer alpha only
  kDirect,     // one Gamma(alpha, beta) draw
};

double sample_resolution(const ModelParams& params, int depth, Rng& rng,
                         SamplingMode mode = SamplingMode::kAuto);
double sample_resolution(const ModelParams& params, int depth,
                         std::uint64_t seed,
                         SamplingMode mode = SamplingMode::kAuto);

struct SyntheticCorpusSpec {
  int depth = 10;
  std::size_t artifacts_per_level = 100;
  std::uint64_t seed = 0;
  Day publication_start = 14610;  // 2010-01-01
  Day publication_window = 3650;  // days over which advisories are published
  Day max_adoption_lag = 30;      // dependent release follows its dependency

  void validate() const;
};

struct SyntheticCorpus {
  DependencyGraph graph;  // successor edges already computed
  std::vector<CveRecord> cves;
};

// Layered corpus. Level 0 holds one advisory per artifact, published on the
// day its vulnerable 1.0.0 release appears. Each level-L artifact's 1.0.0
// depends on the 1.0.0 of a random level-(L-1) artifact and is released
// 0..max_adoption_lag days after it; each 1.0.1 fix depends on the parent's
// fix and appears sample_resolution(depth = L) days (rounded) after 1.0.0.
// All draws for (level, index) come from Rng::stream(seed, level, index).
SyntheticCorpus generate_corpus(const SyntheticCorpusSpec& spec,
                                const ModelParams& params,
                                SamplingMode mode = SamplingMode::kAuto);

}  // namespace vulnlife

#endif  // VULNLIFE_MODEL_HPP_
