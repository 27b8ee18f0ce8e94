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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <string>
#include <vector>

#include "vulnlife/distfit.hpp"
#include "vulnlife/model.hpp"
#include "vulnlife/propagation.hpp"
#include "vulnlife/survival.hpp"
#include "vulnlife/version.hpp"

namespace vulnlife {
namespace {

void BM_VersionSort(benchmark::State& state) {
  Rng rng(1);
  std::vector<Version> versions;
  for (int i = 0; i < state.range(0); ++i) {
    std::string text = std::to_string(rng.uniform_int(0, 9)) + "." +
                       std::to_string(rng.uniform_int(0, 30)) + "." +
                       std::to_string(rng.uniform_int(0, 30));
    if (rng.uniform() < 0.2) text += "-rc" + std::to_string(rng.uniform_int(1, 5));
    versions.push_back(parse_version(text));
  }
  for (auto _ : state) {
    auto copy = versions;
    std::sort(copy.begin(), copy.end());
    benchmark::DoNotOptimize(copy.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VersionSort)->Arg(1 << 10)->Arg(1 << 14);

void BM_KaplanMeier(benchmark::State& state) {
  Rng rng(2);
  std::vector<Observation> obs;
  for (int i = 0; i < state.range(0); ++i) {
    obs.push_back({std::round(rng.exponential(0.01)), rng.uniform() < 0.2});
  }
  for (auto _ : state) benchmark::DoNotOptimize(kaplan_meier(obs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KaplanMeier)->Arg(1 << 12)->Arg(1 << 18);

void BM_FitMle(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  Rng rng(3);
  const auto truth = Distribution::gamma(2.0, 0.02);
  std::vector<double> data(10000);
  for (auto& x : data) x = truth.sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(family, data));
  state.SetLabel(to_string(family));
}
BENCHMARK(BM_FitMle)->DenseRange(0, 3);

void BM_Propagate(benchmark::State& state) {
  SyntheticCorpusSpec spec;
  spec.depth = 10;
  spec.artifacts_per_level = static_cast<std::size_t>(state.range(0));
  spec.seed = 4;
  const auto corpus = generate_corpus(spec, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_all(corpus.graph, corpus.cves, {}, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.graph.size()));
}
BENCHMARK(BM_Propagate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace vulnlife

BENCHMARK_MAIN();
