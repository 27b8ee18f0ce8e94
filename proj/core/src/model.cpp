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

#include "vulnlife/model.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "vulnlife/error.hpp"

namespace vulnlife {

void ModelParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DataError("model: alpha must be positive");
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw DataError("model: k must be positive");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DataError("model: c must be >= 0");
}

bool ModelParams::integer_alpha() const {
  return alpha >= 1.0 && std::floor(alpha) == alpha;
}

double resolution_rate(const ModelParams& params, int depth) {
  params.validate();
  if (depth < 0) throw DataError("model: depth must be >= 0");
  const double denom = depth + params.c;
  if (denom == 0.0) throw DataError("model: depth + c is zero");
  return params.k / denom;
}

double expected_resolution(const ModelParams& params, int depth) {
  return params.alpha / resolution_rate(params, depth);
}

double resolution_variance(const ModelParams& params, int depth) {
  const double beta = resolution_rate(params, depth);
  return params.alpha / (beta * beta);
}

double sample_resolution(const ModelParams& params, int depth, Rng& rng,
                         SamplingMode mode) {
  const double beta = resolution_rate(params, depth);
  if (mode == SamplingMode::kAuto) {
    mode = params.integer_alpha() ? SamplingMode::kStageWise
                                  : SamplingMode::kDirect;
  }
  if (mode == SamplingMode::kDirect) return rng.gamma(params.alpha, beta);
  if (!params.integer_alpha()) {
    throw DataError("model: stage-wise sampling needs an integer alpha");
  }
  const auto stages = static_cast<long>(params.alpha);
  double total = 0.0;
  for (long i = 0; i < stages; ++i) total += rng.exponential(beta);
  return total;
}

double sample_resolution(const ModelParams& params, int depth,
                         std::uint64_t seed, SamplingMode mode) {
  Rng rng(seed);
  return sample_resolution(params, depth, rng, mode);
}

void SyntheticCorpusSpec::validate() const {
  if (depth < 0) throw DataError("corpus: depth must be >= 0");
  if (artifacts_per_level < 1) {
    throw DataError("corpus: artifacts_per_level must be >= 1");
  }
  if (publication_window < 1) {
    throw DataError("corpus: publication window must be >= 1 day");
  }
  if (max_adoption_lag < 0) throw DataError("corpus: adoption lag must be >= 0");
}

SyntheticCorpus generate_corpus(const SyntheticCorpusSpec& spec,
                                const ModelParams& params, SamplingMode mode) {
  spec.validate();
  params.validate();

  const std::size_t width = spec.artifacts_per_level;
  auto artifact_name = [](int level, std::size_t i) {
    return fmt::format("synthetic.l{:02d}:a{:05d}", level, i);
  };

  std::vector<Release> releases;
  std::vector<DependencyRow> deps;
  std::vector<CveRecord> cves;
  releases.reserve(2 * width * static_cast<std::size_t>(spec.depth + 1));

  std::vector<Day> previous_release(width);
  std::vector<Day> current_release(width);
  const Version vulnerable = Version::parse("1.0.0");
  const Version fixed = Version::parse("1.0.1");

  for (int level = 0; level <= spec.depth; ++level) {
    for (std::size_t i = 0; i < width; ++i) {
      Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(level), i);
      const std::string name = artifact_name(level, i);
      Day released = 0;
      if (level == 0) {
        released = spec.publication_start +
                   rng.uniform_int(0, spec.publication_window - 1);
        CveRecord cve;
        cve.id = fmt::format("SYN-{:05d}", i);
        cve.published_at = released;
        cve.affected.push_back({name, {}, std::string("0"), fixed.raw()});
        cves.push_back(std::move(cve));
      } else {
        const auto parent = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(width) - 1));
        released = previous_release[parent] +
                   rng.uniform_int(0, spec.max_adoption_lag);
        const std::string parent_name = artifact_name(level - 1, parent);
        deps.push_back({name, vulnerable.raw(), parent_name, vulnerable.raw(), 0});
        deps.push_back({name, fixed.raw(), parent_name, fixed.raw(), 0});
      }
      const double t = sample_resolution(params, level, rng, mode);
      releases.push_back({name, vulnerable, released});
      releases.push_back({name, fixed, released + std::llround(t)});
      current_release[i] = released;
    }
    std::swap(previous_release, current_release);
  }

  SyntheticCorpus corpus;
  corpus.graph = DependencyGraph::build(std::move(releases), deps);
  corpus.graph.compute_next_edges();
  for (auto& cve : cves) expand_affected(cve, corpus.graph);
  corpus.cves = std::move(cves);
  return corpus;
}

}  // namespace vulnlife
