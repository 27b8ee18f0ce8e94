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

// Maximum-likelihood fitting of resolution-time distributions, AIC ranking,
// Anderson-Darling goodness of fit with parametric bootstrap p-values, and
// Q-Q data.

#ifndef VULNLIFE_DISTFIT_HPP_
#define VULNLIFE_DISTFIT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vulnlife/random.hpp"

namespace vulnlife {

enum class Family { kExponential, kGamma, kLogNormal, kWeibull };

inline constexpr std::array<Family, 4> kAllFamilies = {
    Family::kExponential, Family::kWeibull, Family::kGamma, Family::kLogNormal};

// "exponential", "weibull", "gamma", "lognormal".
const char* to_string(Family family);
Family parse_family(std::string_view name);

// A fully parameterised member of one family.
//   exponential: rate
//   weibull:     shape k, scale lambda
//   gamma:       shape alpha, rate beta (density beta^a t^(a-1) e^(-beta t) / G(a))
//   lognormal:   log-mean mu, log-sd sigma
class Distribution {
 public:
  static Distribution exponential(double rate);
  static Distribution weibull(double shape, double scale);
  static Distribution gamma(double shape, double rate);
  static Distribution lognormal(double log_mean, double log_sd);

  Family family() const noexcept { return family_; }
  // Free parameters, in the order listed above.
  std::vector<std::pair<std::string, double>> params() const;
  std::size_t parameter_count() const noexcept {
    return family_ == Family::kExponential ? 1 : 2;
  }
  double first() const noexcept { return a_; }
  double second() const noexcept { return b_; }

  // Same family, parameters replaced. Throws DataError outside the domain.
  Distribution with_params(double first, double second = 0.0) const;

  double log_pdf(double x) const;
  double cdf(double x) const;
  double sf(double x) const;  // 1 - cdf, computed directly
  double quantile(double p) const;
  double mean() const;
  double sample(Rng& rng) const;

 private:
  Distribution(Family family, double a, double b);

  Family family_;
  double a_;
  double b_;
};

struct FitResult {
  Distribution distribution;
  std::size_t n = 0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  std::optional<double> ad_statistic;
  std::optional<double> ad_p_value;

  Family family() const noexcept { return distribution.family(); }
};

inline constexpr std::size_t kMinFitSamples = 10;
inline constexpr double kFitTolerance = 1e-9;
inline constexpr int kFitMaxIterations = 200;

// Replaces zero durations by half a day so log-domain families apply.
// Throws DataError on negative or non-finite values.
std::vector<double> prepare_durations(std::span<const double> days);

double log_likelihood(const Distribution& d, std::span<const double> data);

// Exponential and log-normal in closed form; gamma by Newton iteration on
// ln(a) - digamma(a) = ln(mean) - mean(ln x); Weibull by safeguarded Newton on
// the shape profile equation. Throws DataError (fewer than 10 values or a
// non-positive value), DegenerateData (all values equal) or NonConvergence.
FitResult fit_mle(Family family, std::span<const double> data);

// Ascending AIC, ties broken by family name.
std::vector<FitResult> aic_rank(std::vector<FitResult> fits);

inline constexpr double kCdfClamp = 1e-12;

// A^2 of `data` against a fully specified distribution. CDF values are
// clamped into [1e-12, 1 - 1e-12]; `clamped` reports how many were.
double ad_statistic(const Distribution& d, std::span<const double> data,
                    std::size_t* clamped = nullptr);

struct BootstrapOptions {
  std::size_t replicates = 250;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct AndersonDarlingResult {
  double statistic = 0.0;
  double p_value = 1.0;            // clipped to [0.01, 1]
  std::size_t replicates = 0;      // replicates whose refit succeeded
  std::size_t clamped = 0;
};

inline constexpr double kMinReportedPValue = 0.01;

// Parametric bootstrap: each replicate draws n values from the fitted
// distribution on its own derived stream, refits the same family and
// recomputes A^2. p is the fraction of replicates with A^2 >= observed.
AndersonDarlingResult anderson_darling(const FitResult& fit,
                                       std::span<const double> data,
                                       const BootstrapOptions& options = {});

struct QqPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};

// One point per order statistic at plotting position (i - 0.5) / n.
std::vector<QqPoint> qq_points(const Distribution& d,
                               std::span<const double> data);

// Two-sample Anderson-Darling test (Scholz & Stephens, right-continuous
// form): `a2` is A2kN, `standardized` is (A2kN - 1) / sigma_N.
struct TwoSampleAndersonDarling {
  double a2 = 0.0;
  double standardized = 0.0;
  double p_value = 0.0;  // interpolated from the critical table, in [0.001, 0.25]

  // Critical value of `standardized` at significance 0.25 ... 0.001.
  static double critical_value(double significance);
  bool rejects(double significance) const {
    return standardized >= critical_value(significance);
  }
};

TwoSampleAndersonDarling anderson_darling_two_sample(
    std::span<const double> first, std::span<const double> second);

}  // namespace vulnlife

#endif  // VULNLIFE_DISTFIT_HPP_
