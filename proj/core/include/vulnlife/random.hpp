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

// Portable random streams.
//
// Every variate is derived from std::mt19937_64, whose output sequence is
// fixed by the standard, through transforms implemented here rather than the
// implementation-defined <random> distributions. A seeded run therefore
// produces the same numbers with any conforming standard library.
//
// Stream splitting: independent streams are keyed by a root seed and up to
// two integers (for example artifact index and dependency level) mixed with
// SplitMix64. Streams never share state, so work can be split across threads
// without changing results.

#ifndef VULNLIFE_RANDOM_HPP_
#define VULNLIFE_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace vulnlife {

// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                          std::uint64_t b = 0) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(derive_seed(root, a, b));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  double exponential(double rate);
  double normal();
  // Gamma with shape `shape` and rate `rate` (Marsaglia-Tsang).
  double gamma(double shape, double rate);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vulnlife

#endif  // VULNLIFE_RANDOM_HPP_
