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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "report.hpp"
#include "vulnlife/depgraph.hpp"
#include "vulnlife/distfit.hpp"
#include "vulnlife/error.hpp"
#include "vulnlife/model.hpp"
#include "vulnlife/propagation.hpp"
#include "vulnlife/regression.hpp"
#include "vulnlife/survival.hpp"

namespace vulnlife::tools {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  std::string releases;
  std::string deps;
  std::string cves;
  std::string samples;
  std::string stats;
  std::string out;
  int max_level = 10;
  std::string duration = "cumulative";
  bool include_censored = false;
  std::size_t bootstrap = 250;
  std::uint64_t seed = 0;
  std::string target = "mean";
  bool per_sample = false;
  std::optional<int> level;
  ModelParams model;
  int depth = 10;
  std::size_t per_level = 100;
  std::string publication_start = "2010-01-01";

  json to_json() const {
    json j;
    j["subcommand"] = subcommand;
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) j[key] = v;
    };
    put("releases", releases);
    put("deps", deps);
    put("cves", cves);
    put("samples", samples);
    put("stats", stats);
    put("out", out);
    j["max_level"] = max_level;
    j["duration"] = duration;
    j["include_censored_as_events"] = include_censored;
    j["bootstrap"] = bootstrap;
    j["seed"] = seed;
    if (subcommand == "regress") {
      j["target"] = target;
      j["per_sample"] = per_sample;
    }
    if (level) j["level"] = *level;
    if (subcommand == "simulate") {
      j["alpha"] = model.alpha;
      j["k"] = model.k;
      j["c"] = model.c;
      j["depth"] = depth;
      j["per_level"] = per_level;
      j["publication_start"] = publication_start;
    }
    return j;
  }
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

fs::path output_dir(const RunConfig& cfg) {
  if (cfg.out.empty()) throw DataError("--out is required");
  fs::create_directories(cfg.out);
  return cfg.out;
}

struct LoadedGraph {
  DependencyGraph graph;
  IngestDiagnostics diagnostics;
  NextEdgeStats next;
};

LoadedGraph load_graph(const RunConfig& cfg) {
  if (cfg.releases.empty() || cfg.deps.empty()) {
    throw DataError("--releases and --deps are required");
  }
  LoadedGraph g;
  g.graph = ingest_graph(cfg.releases, cfg.deps, &g.diagnostics);
  g.next = g.graph.compute_next_edges();
  return g;
}

struct SampleSet {
  std::vector<LifetimeSample> samples;
  json provenance;
};

SampleSet load_samples(const RunConfig& cfg, std::ostream& err) {
  SampleSet set;
  if (!cfg.samples.empty()) {
    set.samples = read_samples_csv(cfg.samples);
    set.provenance["source"] = "samples";
  } else {
    if (cfg.cves.empty()) {
      throw DataError("either --samples or --releases/--deps/--cves is required");
    }
    LoadedGraph g = load_graph(cfg);
    CveDiagnostics cve_diag;
    const auto cves = ingest_cves(cfg.cves, g.graph, &cve_diag);
    for (const auto& u : cve_diag.unknown_artifacts) {
      err << "warning: unknown artifact " << u << '\n';
    }
    FilterReport filter;
    set.samples = filter_samples(
        propagate_all(g.graph, cves, {cfg.max_level, std::nullopt}), &filter);
    set.provenance["source"] = "corpus";
    set.provenance["dropped_negative_level"] = filter.negative_level;
    set.provenance["dropped_negative_cumulative"] = filter.negative_cumulative;
  }
  if (cfg.level) {
    std::erase_if(set.samples, [&](const LifetimeSample& s) {
      return s.level != *cfg.level;
    });
  }
  set.provenance["samples"] = set.samples.size();
  return set;
}

json fit_json(const FitResult& fit) {
  json j;
  j["family"] = to_string(fit.family());
  json params = json::object();
  for (const auto& [name, value] : fit.distribution.params()) params[name] = value;
  j["params"] = params;
  j["loglik"] = fit.log_likelihood;
  j["aic"] = fit.aic;
  j["ad_stat"] = fit.ad_statistic ? json(*fit.ad_statistic) : json(nullptr);
  j["ad_p"] = fit.ad_p_value ? json(*fit.ad_p_value) : json(nullptr);
  return j;
}

json level_counts(std::span<const LifetimeSample> samples) {
  std::map<int, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& s : samples) {
    auto& [total, censored] = counts[s.level];
    ++total;
    censored += s.censored ? 1 : 0;
  }
  json arr = json::array();
  for (const auto& [level, c] : counts) {
    arr.push_back({{"level", level}, {"count", c.first}, {"censored", c.second}});
  }
  return arr;
}

json cmd_ingest(const RunConfig& cfg, std::ostream& err) {
  LoadedGraph g = load_graph(cfg);
  for (const auto& m : g.diagnostics.messages) err << "warning: " << m << '\n';
  json j;
  j["releases"] = g.graph.size();
  j["artifacts"] = g.graph.artifacts().size();
  j["dep_edges"] = g.graph.dep_edge_count();
  j["dropped_edges"] = g.diagnostics.dropped_edges;
  j["duplicate_edges"] = g.diagnostics.duplicate_edges;
  j["next_edges"] = g.next.with_successor;
  j["heuristic_agreement"] = g.next.agreement_ratio();
  if (!cfg.cves.empty()) {
    CveDiagnostics cve_diag;
    const auto cves = ingest_cves(cfg.cves, g.graph, &cve_diag);
    std::size_t affected = 0;
    for (const auto& c : cves) affected += c.affected_releases.size();
    for (const auto& u : cve_diag.unknown_artifacts) {
      err << "warning: unknown artifact " << u << '\n';
    }
    j["cves"] = cves.size();
    j["affected_releases"] = affected;
    j["unknown_artifacts"] = cve_diag.unknown_artifacts.size();
  }
  if (!cfg.out.empty()) {
    const fs::path dir = output_dir(cfg);
    auto out = open_out(dir / "next_edges.csv");
    write_next_edges_csv(out, g.graph);
  }
  return j;
}

json cmd_propagate(const RunConfig& cfg, std::ostream& err) {
  if (cfg.cves.empty()) throw DataError("--cves is required");
  LoadedGraph g = load_graph(cfg);
  CveDiagnostics cve_diag;
  const auto cves = ingest_cves(cfg.cves, g.graph, &cve_diag);
  for (const auto& u : cve_diag.unknown_artifacts) {
    err << "warning: unknown artifact " << u << '\n';
  }
  auto raw = propagate_all(g.graph, cves, {cfg.max_level, std::nullopt});
  FilterReport filter;
  const auto samples = filter_samples(std::move(raw), &filter);
  const fs::path dir = output_dir(cfg);
  {
    auto out = open_out(dir / "samples.csv");
    write_samples_csv(out, samples);
  }
  json j;
  j["cves"] = cves.size();
  j["raw_samples"] = filter.input;
  j["dropped_negative_level"] = filter.negative_level;
  j["dropped_negative_cumulative"] = filter.negative_cumulative;
  j["samples"] = filter.retained;
  j["levels"] = level_counts(samples);
  j["output"] = (dir / "samples.csv").string();
  return j;
}

json cmd_survival(const RunConfig& cfg, std::ostream& err) {
  const DurationField field = parse_duration_field(cfg.duration);
  const SampleSet set = load_samples(cfg, err);
  const fs::path dir = output_dir(cfg);
  const auto curves = stratified_survival(set.samples, field);
  const auto stats = level_stats(set.samples, field, cfg.include_censored);
  {
    auto out = open_out(dir / "survival_curves.csv");
    write_curves_csv(out, curves);
  }
  {
    auto out = open_out(dir / "level_stats.csv");
    write_level_stats_csv(out, stats);
  }
  json levels = json::array();
  for (const auto& [level, curve] : curves) {
    const double median = curve.median();
    levels.push_back({{"level", level},
                      {"events", curve.times.size()},
                      {"median_survival", std::isfinite(median) ? json(median)
                                                                : json(nullptr)}});
  }
  json j;
  j["input"] = set.provenance;
  j["curves"] = levels;
  return j;
}

json cmd_fit(const RunConfig& cfg, std::ostream& err) {
  const DurationField field = parse_duration_field(cfg.duration);
  const SampleSet set = load_samples(cfg, err);
  std::vector<double> days;
  for (const auto& s : set.samples) {
    if (s.censored && !cfg.include_censored) continue;
    days.push_back(static_cast<double>(s.duration(field)));
  }
  const std::vector<double> data = prepare_durations(days);

  std::vector<FitResult> fits;
  for (const Family family : kAllFamilies) {
    try {
      FitResult fit = fit_mle(family, data);
      const auto ad = anderson_darling(
          fit, data, {cfg.bootstrap, derive_seed(cfg.seed, static_cast<std::uint64_t>(family))});
      fit.ad_statistic = ad.statistic;
      fit.ad_p_value = ad.p_value;
      fits.push_back(fit);
    } catch (const NonConvergence& e) {
      err << "warning: " << to_string(family) << ": " << e.what() << '\n';
    }
  }
  if (fits.empty()) throw NonConvergence("no distribution could be fitted");
  fits = aic_rank(std::move(fits));

  json ranked = json::array();
  for (const auto& f : fits) ranked.push_back(fit_json(f));
  json j;
  j["input"] = set.provenance;
  j["n"] = data.size();
  j["fits"] = ranked;
  if (!cfg.out.empty()) {
    const fs::path dir = output_dir(cfg);
    for (const auto& f : fits) {
      auto out = open_out(dir / fmt::format("qq_{}.csv", to_string(f.family())));
      out << "theoretical,empirical\n";
      for (const auto& p : qq_points(f.distribution, data)) {
        out << fmt::format("{},{}\n", p.theoretical, p.empirical);
      }
    }
    json doc = ranked;
    auto out = open_out(dir / "fits.json");
    out << json({{"fits", doc}, {"config", cfg.to_json()}}).dump(2) << '\n';
  }
  return j;
}

json cmd_regress(const RunConfig& cfg, std::ostream& err) {
  const Target target = parse_target(cfg.target);
  RegressionResult result;
  json input;
  if (!cfg.stats.empty()) {
    std::ifstream in(cfg.stats);
    if (!in) throw DataError("cannot open '" + cfg.stats + "'");
    const auto stats = read_level_stats_csv(in, cfg.stats);
    for (const auto& s : stats) {
      if (std::isnan(target == Target::kMean ? s.mean : s.median)) {
        throw DataError(cfg.stats + ": missing column '" + cfg.target + "'");
      }
    }
    result = ols_fit(level_points(stats, target));
    input["source"] = "stats";
  } else {
    const DurationField field = parse_duration_field(cfg.duration);
    const SampleSet set = load_samples(cfg, err);
    input = set.provenance;
    if (cfg.per_sample) {
      result = ols_fit(sample_points(set.samples, field));
    } else {
      const auto stats = level_stats(set.samples, field, cfg.include_censored);
      result = ols_fit(level_points(stats, target));
    }
  }
  json j = regression_json(target, result);
  j["input"] = input;
  if (!cfg.out.empty()) {
    const fs::path dir = output_dir(cfg);
    json doc = j;
    doc["config"] = cfg.to_json();
    auto out = open_out(dir / "regression.json");
    out << doc.dump(2) << '\n';
  }
  return j;
}

json cmd_simulate(const RunConfig& cfg, std::ostream& err) {
  SyntheticCorpusSpec spec;
  spec.depth = cfg.depth;
  spec.artifacts_per_level = cfg.per_level;
  spec.seed = cfg.seed;
  const auto start = parse_iso_date(cfg.publication_start);
  if (!start) throw DataError("invalid --publication-start");
  spec.publication_start = *start;
  if (!cfg.model.integer_alpha()) {
    err << "warning: non-integer alpha; sampling Gamma directly, the stage "
           "interpretation does not apply\n";
  }
  const SyntheticCorpus corpus = generate_corpus(spec, cfg.model);
  const fs::path dir = output_dir(cfg);
  {
    auto out = open_out(dir / "releases.csv");
    write_releases_csv(out, corpus.graph);
  }
  {
    auto out = open_out(dir / "deps.csv");
    write_deps_csv(out, corpus.graph);
  }
  {
    auto out = open_out(dir / "cves.json");
    write_cves_json(out, corpus.cves);
  }
  {
    auto out = open_out(dir / "run_config.json");
    out << cfg.to_json().dump(2) << '\n';
  }
  json expected = json::array();
  for (int d = 0; d <= cfg.depth; ++d) {
    expected.push_back(expected_resolution(cfg.model, d));
  }
  json j;
  j["releases"] = corpus.graph.size();
  j["dep_edges"] = corpus.graph.dep_edge_count();
  j["cves"] = corpus.cves.size();
  j["expected_level_days"] = expected;
  j["theory"] = {{"slope", cfg.model.alpha / cfg.model.k},
                 {"intercept", cfg.model.alpha * cfg.model.c / cfg.model.k}};
  j["files"] = {(dir / "releases.csv").string(), (dir / "deps.csv").string(),
                (dir / "cves.json").string()};
  return j;
}

json cmd_report(const RunConfig& cfg, std::ostream& err) {
  const SampleSet set = load_samples(cfg, err);
  if (set.samples.empty()) err << "warning: no samples; writing empty reports\n";
  const fs::path dir = output_dir(cfg);
  const auto files = write_report(
      set.samples, dir,
      {parse_duration_field(cfg.duration), cfg.include_censored},
      cfg.to_json());
  json j;
  j["input"] = set.provenance;
  j["files"] = files;
  return j;
}

void add_corpus_inputs(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--releases", cfg.releases, "releases CSV");
  sub->add_option("--deps", cfg.deps, "dependencies CSV");
  sub->add_option("--cves", cfg.cves, "advisories JSON");
}

void add_analysis_inputs(CLI::App* sub, RunConfig& cfg) {
  add_corpus_inputs(sub, cfg);
  sub->add_option("--samples", cfg.samples, "lifetime samples CSV from 'propagate'");
  sub->add_option("--max-level", cfg.max_level, "deepest dependency level")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--duration", cfg.duration, "duration field")
      ->check(CLI::IsMember({"cumulative", "level"}));
  sub->add_flag("--include-censored-as-events", cfg.include_censored,
                "treat censored durations as plain values in statistics");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Transitive vulnerability lifetime analysis", "vulnlife"};
  app.require_subcommand(1);
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--seed", cfg.seed, "root random seed");

  auto* ingest = app.add_subcommand("ingest", "validate a corpus and compute successor edges");
  add_corpus_inputs(ingest, cfg);
  ingest->add_option("--out", cfg.out, "output directory");

  auto* propagate = app.add_subcommand("propagate", "propagate advisories and extract lifetime samples");
  add_corpus_inputs(propagate, cfg);
  propagate->add_option("--out", cfg.out, "output directory");
  propagate->add_option("--max-level", cfg.max_level, "deepest dependency level")
      ->check(CLI::NonNegativeNumber);

  auto* survival = app.add_subcommand("survival", "Kaplan-Meier curves and level statistics");
  add_analysis_inputs(survival, cfg);
  survival->add_option("--out", cfg.out, "output directory");

  auto* fit = app.add_subcommand("fit", "fit distributions with AIC and Anderson-Darling");
  add_analysis_inputs(fit, cfg);
  fit->add_option("--out", cfg.out, "output directory");
  fit->add_option("--bootstrap", cfg.bootstrap, "bootstrap replicates")
      ->check(CLI::PositiveNumber);
  fit->add_option("--seed", cfg.seed, "root random seed");
  fit->add_option("--level", cfg.level, "restrict to one dependency level");

  auto* regress = app.add_subcommand("regress", "least squares of duration against level");
  add_analysis_inputs(regress, cfg);
  regress->add_option("--out", cfg.out, "output directory");
  regress->add_option("--stats", cfg.stats, "level statistics CSV");
  regress->add_option("--target", cfg.target, "aggregate to regress")
      ->check(CLI::IsMember({"mean", "median"}));
  regress->add_flag("--per-sample", cfg.per_sample,
                    "regress every sample instead of per-level aggregates");

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic corpus from the Gamma model");
  simulate->add_option("--out", cfg.out, "output directory")->required();
  simulate->add_option("--seed", cfg.seed, "root random seed");
  simulate->add_option("--alpha", cfg.model.alpha, "number of resolution stages");
  simulate->add_option("--k", cfg.model.k, "base resolution rate per day");
  simulate->add_option("--c", cfg.model.c, "depth offset");
  simulate->add_option("--depth", cfg.depth, "deepest level")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--per-level", cfg.per_level, "artifacts per level")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--publication-start", cfg.publication_start,
                       "first advisory date (YYYY-MM-DD)");

  auto* report = app.add_subcommand("report", "write plot-ready CSV reports");
  add_analysis_inputs(report, cfg);
  report->add_option("--out", cfg.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    json summary;
    if (cfg.subcommand == "ingest") summary = cmd_ingest(cfg, err);
    if (cfg.subcommand == "propagate") summary = cmd_propagate(cfg, err);
    if (cfg.subcommand == "survival") summary = cmd_survival(cfg, err);
    if (cfg.subcommand == "fit") summary = cmd_fit(cfg, err);
    if (cfg.subcommand == "regress") summary = cmd_regress(cfg, err);
    if (cfg.subcommand == "simulate") summary = cmd_simulate(cfg, err);
    if (cfg.subcommand == "report") summary = cmd_report(cfg, err);
    json doc;
    doc["command"] = cfg.subcommand;
    doc["result"] = summary;
    doc["config"] = cfg.to_json();
    out << doc.dump(2) << '\n';
    return kOk;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("vulnlife");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vulnlife::tools
