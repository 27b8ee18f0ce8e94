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

#include "vulnlife/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "vulnlife/error.hpp"

namespace vulnlife {
namespace {

namespace bm = boost::math;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

struct LogMoments {
  double mean = 0.0;
  double mean_log = 0.0;
  double min = 0.0;
  double max = 0.0;
};

LogMoments check_and_summarise(std::span<const double> data) {
  if (data.size() < kMinFitSamples) {
    throw DataError("fitting requires at least " +
                    std::to_string(kMinFitSamples) + " values, got " +
                    std::to_string(data.size()));
  }
  LogMoments m;
  m.min = m.max = data.front();
  double sum = 0.0;
  double sum_log = 0.0;
  for (const double x : data) {
    if (!positive_finite(x)) throw DataError("fitting requires positive values");
    sum += x;
    sum_log += std::log(x);
    m.min = std::min(m.min, x);
    m.max = std::max(m.max, x);
  }
  if (m.min == m.max) throw DegenerateData("all values are equal");
  const auto n = static_cast<double>(data.size());
  m.mean = sum / n;
  m.mean_log = sum_log / n;
  return m;
}

Distribution fit_gamma(const LogMoments& m) {
  const double s = std::log(m.mean) - m.mean_log;
  if (!(s > 0.0)) throw DegenerateData("gamma: non-positive log-mean gap");
  // Closed-form starting point (Minka 2002), within a few percent of the root.
  double alpha = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) /
                 (12.0 * s);
  for (int iter = 0; iter < kFitMaxIterations; ++iter) {
    const double f = std::log(alpha) - bm::digamma(alpha) - s;
    const double df = 1.0 / alpha - bm::trigamma(alpha);
    double next = alpha - f / df;
    if (!(next > 0.0)) next = alpha / 2.0;
    const double change = std::abs(next - alpha) / alpha;
    alpha = next;
    if (change < kFitTolerance) return Distribution::gamma(alpha, alpha / m.mean);
  }
  throw NonConvergence("gamma shape iteration did not converge");
}

// Profile equation for the Weibull shape k:
//   g(k) = sum(x^k ln x) / sum(x^k) - 1/k - mean(ln x)
// evaluated with weights exp(k (ln x - ln max)) to avoid overflow.
struct WeibullProfile {
  std::vector<double> logs;
  double log_max = 0.0;
  double mean_log = 0.0;

  std::pair<double, double> value_and_slope(double k) const {
    double w_sum = 0.0;
    double wy = 0.0;
    double wyy = 0.0;
    for (const double y : logs) {
      const double w = std::exp(k * (y - log_max));
      w_sum += w;
      wy += w * y;
      wyy += w * y * y;
    }
    const double mean_y = wy / w_sum;
    const double g = mean_y - 1.0 / k - mean_log;
    const double dg = wyy / w_sum - mean_y * mean_y + 1.0 / (k * k);
    return {g, dg};
  }

  double scale(double k) const {
    double w_sum = 0.0;
    for (const double y : logs) w_sum += std::exp(k * (y - log_max));
    return std::exp(log_max + std::log(w_sum / static_cast<double>(logs.size())) / k);
  }
};

Distribution fit_weibull(std::span<const double> data, const LogMoments& m) {
  WeibullProfile p;
  p.logs.reserve(data.size());
  for (const double x : data) p.logs.push_back(std::log(x));
  p.log_max = std::log(m.max);
  p.mean_log = m.mean_log;

  double var = 0.0;
  for (const double y : p.logs) var += (y - m.mean_log) * (y - m.mean_log);
  var /= static_cast<double>(p.logs.size());
  // Moment estimate: sd(ln x) = pi / (k sqrt 6).
  double k = std::numbers::pi / std::sqrt(6.0 * var);

  double lo = k;
  double hi = k;
  for (int i = 0; p.value_and_slope(lo).first > 0.0; ++i) {
    if (i == 100) throw NonConvergence("weibull: cannot bracket shape");
    lo /= 2.0;
  }
  for (int i = 0; p.value_and_slope(hi).first < 0.0; ++i) {
    if (i == 100) throw NonConvergence("weibull: cannot bracket shape");
    hi *= 2.0;
  }
  for (int iter = 0; iter < kFitMaxIterations; ++iter) {
    const auto [g, dg] = p.value_and_slope(k);
    if (g < 0.0) {
      lo = k;
    } else {
      hi = k;
    }
    double next = k - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - k) / k;
    k = next;
    if (change < kFitTolerance) return Distribution::weibull(k, p.scale(k));
  }
  throw NonConvergence("weibull shape iteration did not converge");
}

Distribution fit_lognormal(std::span<const double> data, const LogMoments& m) {
  double ss = 0.0;
  for (const double x : data) {
    const double d = std::log(x) - m.mean_log;
    ss += d * d;
  }
  return Distribution::lognormal(m.mean_log,
                                 std::sqrt(ss / static_cast<double>(data.size())));
}

double clamp_probability(double p, std::size_t& clamped) {
  if (p < kCdfClamp) {
    ++clamped;
    return kCdfClamp;
  }
  if (p > 1.0 - kCdfClamp) {
    ++clamped;
    return 1.0 - kCdfClamp;
  }
  return p;
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::kExponential: return "exponential";
    case Family::kWeibull: return "weibull";
    case Family::kGamma: return "gamma";
    case Family::kLogNormal: return "lognormal";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const Family f : kAllFamilies) {
    if (name == to_string(f)) return f;
  }
  throw DataError("unknown distribution family '" + std::string(name) + "'");
}

Distribution::Distribution(Family family, double a, double b)
    : family_(family), a_(a), b_(b) {
  const bool ok = family == Family::kExponential
                      ? positive_finite(a)
                      : family == Family::kLogNormal
                            ? std::isfinite(a) && positive_finite(b)
                            : positive_finite(a) && positive_finite(b);
  if (!ok) {
    throw DataError(std::string("invalid ") + to_string(family) + " parameters");
  }
}

Distribution Distribution::exponential(double rate) {
  return {Family::kExponential, rate, 0.0};
}
Distribution Distribution::weibull(double shape, double scale) {
  return {Family::kWeibull, shape, scale};
}
Distribution Distribution::gamma(double shape, double rate) {
  return {Family::kGamma, shape, rate};
}
Distribution Distribution::lognormal(double log_mean, double log_sd) {
  return {Family::kLogNormal, log_mean, log_sd};
}

Distribution Distribution::with_params(double first, double second) const {
  return {family_, first, family_ == Family::kExponential ? 0.0 : second};
}

std::vector<std::pair<std::string, double>> Distribution::params() const {
  switch (family_) {
    case Family::kExponential: return {{"rate", a_}};
    case Family::kWeibull: return {{"shape", a_}, {"scale", b_}};
    case Family::kGamma: return {{"shape", a_}, {"rate", b_}};
    case Family::kLogNormal: return {{"log_mean", a_}, {"log_sd", b_}};
  }
  return {};
}

double Distribution::log_pdf(double x) const {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  switch (family_) {
    case Family::kExponential:
      return std::log(a_) - a_ * x;
    case Family::kWeibull: {
      const double z = x / b_;
      return std::log(a_ / b_) + (a_ - 1.0) * std::log(z) - std::pow(z, a_);
    }
    case Family::kGamma:
      return a_ * std::log(b_) + (a_ - 1.0) * std::log(x) - b_ * x -
             std::lgamma(a_);
    case Family::kLogNormal: {
      const double z = (std::log(x) - a_) / b_;
      return -std::log(x * b_) - 0.5 * std::log(2.0 * std::numbers::pi) -
             0.5 * z * z;
    }
  }
  return 0.0;
}

double Distribution::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  switch (family_) {
    case Family::kExponential: return -std::expm1(-a_ * x);
    case Family::kWeibull: return -std::expm1(-std::pow(x / b_, a_));
    case Family::kGamma: return bm::gamma_p(a_, b_ * x);
    case Family::kLogNormal:
      return 0.5 * bm::erfc(-(std::log(x) - a_) / (b_ * std::numbers::sqrt2));
  }
  return 0.0;
}

double Distribution::sf(double x) const {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  switch (family_) {
    case Family::kExponential: return std::exp(-a_ * x);
    case Family::kWeibull: return std::exp(-std::pow(x / b_, a_));
    case Family::kGamma: return bm::gamma_q(a_, b_ * x);
    case Family::kLogNormal:
      return 0.5 * bm::erfc((std::log(x) - a_) / (b_ * std::numbers::sqrt2));
  }
  return 1.0;
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw DataError("quantile: probability outside [0, 1]");
  }
  switch (family_) {
    case Family::kExponential: return -std::log1p(-p) / a_;
    case Family::kWeibull: return b_ * std::pow(-std::log1p(-p), 1.0 / a_);
    case Family::kGamma: return bm::gamma_p_inv(a_, p) / b_;
    case Family::kLogNormal:
      return std::exp(a_ - b_ * std::numbers::sqrt2 * bm::erfc_inv(2.0 * p));
  }
  return 0.0;
}

double Distribution::mean() const {
  switch (family_) {
    case Family::kExponential: return 1.0 / a_;
    case Family::kWeibull: return b_ * std::tgamma(1.0 + 1.0 / a_);
    case Family::kGamma: return a_ / b_;
    case Family::kLogNormal: return std::exp(a_ + 0.5 * b_ * b_);
  }
  return 0.0;
}

double Distribution::sample(Rng& rng) const {
  switch (family_) {
    case Family::kExponential: return rng.exponential(a_);
    case Family::kWeibull: return b_ * std::pow(-std::log(rng.uniform()), 1.0 / a_);
    case Family::kGamma: return rng.gamma(a_, b_);
    case Family::kLogNormal: return std::exp(a_ + b_ * rng.normal());
  }
  return 0.0;
}

std::vector<double> prepare_durations(std::span<const double> days) {
  std::vector<double> out;
  out.reserve(days.size());
  for (const double d : days) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw DataError("durations must be finite and non-negative");
    }
    out.push_back(d == 0.0 ? 0.5 : d);
  }
  return out;
}

double log_likelihood(const Distribution& d, std::span<const double> data) {
  double ll = 0.0;
  for (const double x : data) ll += d.log_pdf(x);
  return ll;
}

FitResult fit_mle(Family family, std::span<const double> data) {
  const LogMoments m = check_and_summarise(data);
  auto fitted = [&]() -> Distribution {
    switch (family) {
      case Family::kExponential: return Distribution::exponential(1.0 / m.mean);
      case Family::kWeibull: return fit_weibull(data, m);
      case Family::kGamma: return fit_gamma(m);
      case Family::kLogNormal: return fit_lognormal(data, m);
    }
    throw DataError("unknown family");
  }();
  FitResult r{fitted, data.size(), 0.0, 0.0, std::nullopt, std::nullopt};
  r.log_likelihood = log_likelihood(fitted, data);
  r.aic = 2.0 * static_cast<double>(fitted.parameter_count()) -
          2.0 * r.log_likelihood;
  return r;
}

std::vector<FitResult> aic_rank(std::vector<FitResult> fits) {
  std::stable_sort(fits.begin(), fits.end(),
                   [](const FitResult& a, const FitResult& b) {
                     if (a.aic != b.aic) return a.aic < b.aic;
                     return std::string_view(to_string(a.family())) <
                            std::string_view(to_string(b.family()));
                   });
  return fits;
}

double ad_statistic(const Distribution& d, std::span<const double> data,
                    std::size_t* clamped) {
  if (data.empty()) throw EmptyInput("anderson_darling: no data");
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::vector<double> log_cdf(n);
  std::vector<double> log_sf(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    log_cdf[i] = std::log(clamp_probability(d.cdf(x[i]), count));
    log_sf[i] = std::log(clamp_probability(d.sf(x[i]), count));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<double>(2 * i + 1) * (log_cdf[i] + log_sf[n - 1 - i]);
  }
  if (clamped) *clamped = count;
  const auto nn = static_cast<double>(n);
  return -nn - sum / nn;
}

AndersonDarlingResult anderson_darling(const FitResult& fit,
                                       std::span<const double> data,
                                       const BootstrapOptions& options) {
  AndersonDarlingResult result;
  result.statistic = ad_statistic(fit.distribution, data, &result.clamped);

  const std::size_t reps = options.replicates;
  // 1: replicate at least as extreme, 0: not, -1: refit failed.
  std::vector<int> outcome(reps, -1);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers,
                                      static_cast<unsigned>(std::max<std::size_t>(reps, 1))));
  auto run = [&](unsigned worker) {
    std::vector<double> draw(data.size());
    for (std::size_t r = worker; r < reps; r += workers) {
      Rng rng = Rng::stream(options.seed, r);
      for (auto& v : draw) v = fit.distribution.sample(rng);
      try {
        const FitResult refit = fit_mle(fit.family(), draw);
        outcome[r] = ad_statistic(refit.distribution, draw) >= result.statistic;
      } catch (const DataError&) {
        outcome[r] = -1;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }

  std::size_t extreme = 0;
  for (const int o : outcome) {
    if (o < 0) continue;
    ++result.replicates;
    extreme += static_cast<std::size_t>(o);
  }
  if (result.replicates == 0) {
    throw NonConvergence("anderson_darling: every bootstrap refit failed");
  }
  const double p =
      static_cast<double>(extreme) / static_cast<double>(result.replicates);
  result.p_value = std::clamp(p, kMinReportedPValue, 1.0);
  return result;
}

std::vector<QqPoint> qq_points(const Distribution& d,
                               std::span<const double> data) {
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  std::vector<QqPoint> out;
  out.reserve(x.size());
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    out.push_back({d.quantile(p), x[i]});
  }
  return out;
}

namespace {

constexpr std::array<double, 7> kTwoSampleSignificance = {
    0.25, 0.1, 0.05, 0.025, 0.01, 0.005, 0.001};

// Scholz & Stephens (1987) Table 2 interpolation for k - 1 = 1 samples.
std::array<double, 7> two_sample_critical() {
  constexpr std::array<double, 7> b0 = {0.675, 1.281, 1.645, 1.96,
                                        2.326, 2.573, 3.085};
  constexpr std::array<double, 7> b1 = {-0.245, 0.25,  0.678, 1.149,
                                        1.822,  2.364, 3.615};
  constexpr std::array<double, 7> b2 = {-0.105, -0.305, -0.362, -0.391,
                                        -0.396, -0.345, -0.154};
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = b0[i] + b1[i] + b2[i];
  return out;
}

// Least-squares quadratic through (x_i, y_i), evaluated at `at`.
double quadratic_fit_eval(std::span<const double> xs, std::span<const double> ys,
                          double at) {
  // Normal equations for [c0, c1, c2].
  double s[5] = {};
  double t[3] = {};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * ys[i];
      p *= xs[i];
    }
  }
  double m[3][4] = {{s[0], s[1], s[2], t[0]},
                    {s[1], s[2], s[3], t[1]},
                    {s[2], s[3], s[4], t[2]}};
  for (int c = 0; c < 3; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    }
    std::swap(m[c], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  const double c0 = m[0][3] / m[0][0];
  const double c1 = m[1][3] / m[1][1];
  const double c2 = m[2][3] / m[2][2];
  return c0 + c1 * at + c2 * at * at;
}

}  // namespace

double TwoSampleAndersonDarling::critical_value(double significance) {
  const auto crit = two_sample_critical();
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (kTwoSampleSignificance[i] == significance) return crit[i];
  }
  throw DataError("no tabulated critical value for that significance level");
}

TwoSampleAndersonDarling anderson_darling_two_sample(
    std::span<const double> first, std::span<const double> second) {
  if (first.empty() || second.empty()) {
    throw EmptyInput("two-sample Anderson-Darling needs two non-empty samples");
  }
  const std::size_t N = first.size() + second.size();
  if (N < 4) throw DataError("two-sample Anderson-Darling needs N >= 4");

  std::vector<double> a(first.begin(), first.end());
  std::vector<double> b(second.begin(), second.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> pooled;
  pooled.reserve(N);
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(pooled));

  const double n_total = static_cast<double>(N);
  const std::array<double, 2> n = {static_cast<double>(a.size()),
                                   static_cast<double>(b.size())};
  // Walk the distinct pooled values except the largest.
  double a2 = 0.0;
  std::size_t ia = 0;
  std::size_t ib = 0;
  std::size_t j = 0;
  while (j < N) {
    const double z = pooled[j];
    std::size_t l = 0;
    while (j < N && pooled[j] == z) {
      ++j;
      ++l;
    }
    if (j == N) break;
    while (ia < a.size() && a[ia] <= z) ++ia;
    while (ib < b.size() && b[ib] <= z) ++ib;
    const double bj = static_cast<double>(j);
    const double denom = bj * (n_total - bj);
    const double weight = static_cast<double>(l) / n_total;
    const double da = n_total * static_cast<double>(ia) - bj * n[0];
    const double db = n_total * static_cast<double>(ib) - bj * n[1];
    a2 += weight * (da * da / n[0] + db * db / n[1]) / denom;
  }

  const double k = 2.0;
  const double H = 1.0 / n[0] + 1.0 / n[1];
  double h = 0.0;
  for (std::size_t i = 1; i < N; ++i) h += 1.0 / static_cast<double>(i);
  double g = 0.0;
  double tail = 0.0;  // sum_{t=1}^{i} 1/(N - t)
  for (std::size_t i = 1; i + 1 < N; ++i) {
    tail += 1.0 / static_cast<double>(N - i);
    g += tail / static_cast<double>(i + 1);
  }
  const double av = (4 * g - 6) * (k - 1) + (10 - 6 * g) * H;
  const double bv = (2 * g - 4) * k * k + 8 * h * k + (2 * g - 14 * h - 4) * H -
                    8 * h + 4 * g - 6;
  const double cv = (6 * h + 2 * g - 2) * k * k + (4 * h - 4 * g + 6) * k +
                    (2 * h - 6) * H + 4 * h;
  const double dv = (2 * h + 6) * k * k - 4 * h * k;
  const double sigma_sq =
      (av * n_total * n_total * n_total + bv * n_total * n_total +
       cv * n_total + dv) /
      ((n_total - 1) * (n_total - 2) * (n_total - 3));

  TwoSampleAndersonDarling r;
  r.a2 = a2;
  r.standardized = (a2 - (k - 1)) / std::sqrt(sigma_sq);

  const auto crit = two_sample_critical();
  if (r.standardized < crit.front()) {
    r.p_value = kTwoSampleSignificance.front();
  } else if (r.standardized > crit.back()) {
    r.p_value = kTwoSampleSignificance.back();
  } else {
    std::array<double, 7> log_sig{};
    for (std::size_t i = 0; i < log_sig.size(); ++i) {
      log_sig[i] = std::log(kTwoSampleSignificance[i]);
    }
    r.p_value = std::exp(quadratic_fit_eval(crit, log_sig, r.standardized));
  }
  return r;
}

}  // namespace vulnlife
