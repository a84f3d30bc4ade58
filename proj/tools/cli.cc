// Copyright 2026 The pairrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairrank/evaluation.h"
#include "pairrank/hashing.h"
#include "pairrank/ingestion.h"
#include "pairrank/sampling.h"

namespace pairrank::cli {

using json = nlohmann::json;

namespace {

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

AggregateResult RunMethod(const std::string& method,
                          std::span<const PairwiseJudgment> judgments,
                          std::span<const Entity> entities,
                          const SvmConfig& svm, const BtFitConfig& bt) {
  if (method == "count") {
    return CountAggregate(BuildComparisonSet(judgments, entities));
  }
  if (method == "svm") return SvmAggregate(judgments, entities, svm);
  if (method == "bt") return BtFit(judgments, entities, bt);
  throw ValidationError("unknown aggregation method '" + method +
                        "' (expected count, svm or bt)");
}

// Entities a feature is ranked over: the valued ones when a value table
// exists, otherwise every declared entity.
std::vector<Entity> FeatureEntities(const DatasetFile& dataset,
                                    const std::string& feature_id) {
  dataset.Feature(feature_id);
  if (dataset.HasValues(feature_id)) return dataset.ValuedEntities(feature_id);
  return dataset.entities;
}

// ---------------------------------------------------------------------------
// judge

struct JudgeOptions {
  std::string dataset;
  std::string feature;
  std::string sampler = "random";
  std::size_t pairs = 500;
  std::size_t k = 30;
  std::uint64_t seed = 0;
  std::size_t limit = 0;
  std::string judge = "sim";
  double flip = 0.0;
  double difficulty_scale = 0.0;
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  int timeout_ms = 30000;
  int retries = 3;
  int backoff_ms = 1000;
  std::string mode = "zero-shot";
  std::string cache;
  std::size_t jobs = 4;
  std::string out;
};

int CmdJudge(const JudgeOptions& o, std::ostream& out, std::ostream& err) {
  const DatasetFile dataset = LoadDataset(o.dataset);
  const FeatureSpec& feature = dataset.Feature(o.feature);
  std::vector<Entity> entities = FeatureEntities(dataset, o.feature);
  if (o.limit > 0 && o.limit < entities.size()) entities.resize(o.limit);

  std::optional<GroundTruthRanking> gt;
  if (dataset.HasValues(o.feature)) gt = dataset.GroundTruth(o.feature);

  std::vector<EntityPair> pairs;
  if (o.sampler == "random") {
    pairs = SampleRandomPairs(entities, o.pairs, o.seed,
                              gt ? &*gt : nullptr);
  } else if (o.sampler == "per-entity") {
    pairs = SampleKPerEntity(entities, o.k, o.seed);
  } else if (o.sampler == "exhaustive") {
    pairs = ExhaustivePairs(entities);
  } else {
    throw ValidationError("unknown sampler '" + o.sampler + "'");
  }

  std::shared_ptr<Judge> judge;
  if (o.judge == "sim") {
    if (!gt) {
      throw ValidationError("the simulated judge needs a value table for '" +
                            o.feature + "'");
    }
    // The simulator has no tie label; drop tied pairs the samplers that do
    // not consult ground truth may produce.
    std::erase_if(pairs, [&](const EntityPair& p) {
      return !GroundTruthVerdict(*gt, entities[p.first].id,
                                 entities[p.second].id);
    });
    SimulatedJudgeConfig cfg{*gt, o.flip, o.seed, std::nullopt};
    if (o.difficulty_scale > 0) cfg.difficulty_scale = o.difficulty_scale;
    judge = std::make_shared<SimulatedJudge>(std::move(cfg));
  } else if (o.judge == "llm") {
    LlmJudgeConfig cfg;
    cfg.endpoint_url = o.endpoint;
    cfg.model_name = o.model;
    cfg.temperature = o.temperature;
    cfg.timeout = std::chrono::milliseconds(o.timeout_ms);
    cfg.max_retries = o.retries;
    cfg.initial_backoff = std::chrono::milliseconds(o.backoff_ms);
    cfg.fallback_seed = o.seed;
    cfg.mode = ParsePromptMode(o.mode);
    judge = std::make_shared<LlmJudge>(std::move(cfg));
  } else {
    throw ValidationError("unknown judge '" + o.judge + "' (expected sim or llm)");
  }
  const std::string identity = judge->Identity();
  if (!o.cache.empty()) {
    judge = std::make_shared<CachedJudge>(judge, o.cache);
  }

  std::vector<JudgeQuery> queries;
  queries.reserve(pairs.size());
  for (const EntityPair& p : pairs) {
    queries.push_back({feature, entities[p.first], entities[p.second]});
  }
  Collected collected = CollectJudgments(*judge, queries, o.jobs);

  json provenance = {{"command", "judge"},
                     {"dataset", o.dataset},
                     {"feature", o.feature},
                     {"sampler", o.sampler},
                     {"pairs", o.pairs},
                     {"k", o.k},
                     {"seed", o.seed},
                     {"entities", entities.size()},
                     {"judge", identity}};
  if (collected.failure) {
    provenance["partial"] = true;
    provenance["requested"] = queries.size();
  }
  SaveJudgments(collected.judgments, o.out, provenance);

  std::map<JudgmentSource, std::size_t> by_source;
  for (const auto& j : collected.judgments) ++by_source[j.source];
  out << "judgments: " << collected.judgments.size() << " of "
      << queries.size() << " -> " << o.out << "\n";
  for (const auto& [source, count] : by_source) {
    out << "  " << SourceName(source) << ": " << count << "\n";
  }
  if (o.judge == "llm" && !collected.judgments.empty()) {
    const double rate =
        static_cast<double>(by_source[JudgmentSource::kFallbackRandom]) /
        static_cast<double>(collected.judgments.size());
    out << "  non-conforming replies replaced by random labels: "
        << Fixed(100.0 * rate, 1) << "%\n";
  }
  if (collected.failure) {
    err << "error: " << collected.failure->what() << "\n"
        << "wrote " << collected.judgments.size()
        << " completed judgments; rerun with the same --cache to resume\n";
    return kExitRemote;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// aggregate

struct AggregateOptions {
  std::string judgments;
  std::string method;
  std::string dataset;
  std::string feature;
  double lambda = SvmConfig{}.lambda;
  int svm_epochs = SvmConfig{}.epochs;
  std::string solver = "dual-cd";
  double lr = BtFitConfig{}.learning_rate;
  int bt_epochs = BtFitConfig{}.epochs;
  double l2 = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int CmdAggregate(const AggregateOptions& o, std::ostream& out) {
  const std::vector<PairwiseJudgment> judgments = LoadJudgments(o.judgments);
  std::string feature_id = o.feature;
  for (const auto& j : judgments) {
    if (feature_id.empty()) feature_id = j.feature_id;
    if (j.feature_id != feature_id) {
      throw ValidationError("judgments are for feature '" + j.feature_id +
                            "', expected '" + feature_id + "'");
    }
  }

  std::vector<Entity> entities;
  if (!o.dataset.empty()) {
    if (feature_id.empty()) {
      throw ValidationError("--feature is required for an empty judgment file");
    }
    entities = FeatureEntities(LoadDataset(o.dataset), feature_id);
  } else {
    std::set<std::string> seen;
    for (const auto& j : judgments) {
      for (const std::string* id : {&j.first, &j.second}) {
        if (seen.insert(*id).second) entities.push_back({*id, *id});
      }
    }
  }

  SvmConfig svm;
  svm.lambda = o.lambda;
  svm.epochs = o.svm_epochs;
  svm.seed = o.seed;
  svm.solver = ParseSvmSolver(o.solver);
  BtFitConfig bt{o.lr, o.bt_epochs, o.l2, o.seed};
  json config = {{"method", o.method},
                 {"judgments", o.judgments},
                 {"seed", o.seed}};
  if (o.method == "svm") {
    ValidateSvmConfig(svm);
    config["lambda"] = svm.lambda;
    config["solver"] = SvmSolverName(svm.solver);
    if (svm.solver == SvmSolver::kDualCoordinate) {
      config["max_passes"] = svm.max_passes;
      config["tolerance"] = svm.tolerance;
    } else {
      config["epochs"] = svm.epochs;
    }
  } else if (o.method == "bt") {
    ValidateBtFitConfig(bt);
    config["learning_rate"] = bt.learning_rate;
    config["epochs"] = bt.epochs;
    config["l2"] = bt.l2;
  }
  if (!o.dataset.empty()) config["dataset"] = o.dataset;

  AggregateResult result = RunMethod(o.method, judgments, entities, svm, bt);
  ScoresFile file{o.method, feature_id, config, std::move(result.scores),
                  std::move(result.uncompared)};
  SaveScores(file, o.out);
  out << o.method << ": scored " << file.scores.weights.size()
      << " entities from " << judgments.size() << " judgments -> " << o.out
      << "\n";
  if (!file.uncompared.empty()) {
    out << "  " << file.uncompared.size()
        << " entities appear in no judgment and keep weight 0\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::string dataset;
  std::string feature;
  std::string scores;
  std::string judgments;
  std::string reference;
  std::vector<std::string> metrics;
  std::optional<std::uint64_t> seed;
  std::size_t top_k = 0;
  std::string out;
};

// Published fine-tuned-judge figures, printed next to matching runs for
// context only.
struct ReferencePoint {
  const char* feature;
  const char* label;
  double rho;
};
constexpr ReferencePoint kReferencePoints[] = {
    {"sweetness", "fine-tuned LLM judge, SVM (30 samples)", 0.664},
};

int CmdEvaluate(const EvaluateOptions& o, std::ostream& out) {
  const DatasetFile dataset = LoadDataset(o.dataset);
  const FeatureSpec& feature = dataset.Feature(o.feature);
  const bool has_values = dataset.HasValues(o.feature);

  std::vector<std::string> metrics = o.metrics;
  if (metrics.empty()) {
    if (!o.judgments.empty()) metrics.push_back("accuracy");
    if (!o.scores.empty()) metrics.push_back("spearman");
  }
  if (metrics.empty()) {
    throw ValidationError("nothing to evaluate: pass --scores and/or "
                          "--judgments");
  }

  std::optional<ScoresFile> scores;
  if (!o.scores.empty()) scores = LoadScores(o.scores);
  std::uint64_t seed = 0;
  if (o.seed) {
    seed = *o.seed;
  } else if (scores && scores->config.contains("seed")) {
    seed = scores->config["seed"].get<std::uint64_t>();
  }

  std::vector<MetricResult> results;
  for (const std::string& metric : metrics) {
    if (metric == "accuracy") {
      if (o.judgments.empty()) {
        throw ValidationError("accuracy needs --judgments");
      }
      const auto predicted = LoadJudgments(o.judgments);
      double value;
      if (has_values) {
        value = PairwiseAccuracy(predicted, dataset.GroundTruth(o.feature));
      } else if (!o.reference.empty()) {
        value = PairwiseAccuracyAgainst(predicted, LoadJudgments(o.reference));
      } else {
        throw ValidationError("feature '" + o.feature +
                              "' has no value table; pass "
                              "--reference-judgments for accuracy");
      }
      results.push_back({o.feature, "accuracy", value, predicted.size(), seed});
    } else if (metric == "spearman") {
      if (!has_values) {
        throw ValidationError(
            "feature '" + o.feature +
            "' is known only through pairwise judgments; Spearman rho needs a "
            "full ground-truth ranking, so only accuracy is available");
      }
      if (!scores) throw ValidationError("spearman needs --scores");
      if (scores->feature_id != o.feature) {
        throw ValidationError("scores are for feature '" +
                              scores->feature_id + "', not '" + o.feature +
                              "'");
      }
      const Ranking predicted = RankingFromScores(scores->scores);
      const Ranking truth = RankingFromGroundTruth(dataset.GroundTruth(o.feature));
      const double rho = SpearmanRho(predicted, truth);
      results.push_back({o.feature, "spearman", rho, predicted.size(), seed});
    } else {
      throw ValidationError("unknown metric '" + metric +
                            "' (expected accuracy or spearman)");
    }
  }

  out << "feature\tmetric\tvalue\tsamples\tseed\n";
  for (const MetricResult& r : results) {
    out << r.feature_id << "\t" << r.metric << "\t" << Fixed(r.value) << "\t"
        << r.sample_count << "\t" << r.seed << "\n";
    if (r.metric != "spearman") continue;
    for (const ReferencePoint& ref : kReferencePoints) {
      if (feature.id == ref.feature) {
        out << "reference (not asserted): " << ref.label << " reached rho = "
            << Fixed(ref.rho, 3) << " on " << ref.feature << "\n";
      }
    }
  }
  if (o.top_k > 0 && scores) {
    const TopBottom tb = TopBottomReport(RankingFromScores(scores->scores),
                                         o.top_k, dataset.entities);
    if (tb.note) out << "note: " << *tb.note << "\n";
    out << "top:";
    for (const auto& name : tb.top) out << " [" << name << "]";
    out << "\nbottom:";
    for (const auto& name : tb.bottom) out << " [" << name << "]";
    out << "\n";
  }

  if (!o.out.empty()) {
    json doc = {{"format", "pairrank-report/1"}, {"results", json::array()}};
    for (const MetricResult& r : results) {
      doc["results"].push_back(MetricToJson(r));
    }
    WriteFileAtomically(o.out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  SimulationConfig config;
  std::string solver = "dual-cd";
  std::string out;
};

int CmdSimulate(SimulateOptions o, std::ostream& out) {
  o.config.svm.solver = ParseSvmSolver(o.solver);
  const auto cells = SimulateTrend(o.config);
  const std::string csv = TrendCsv(cells);
  if (o.out.empty()) {
    out << csv;
  } else {
    WriteFileAtomically(o.out, csv);
    out << "wrote " << cells.size() << " cells -> " << o.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportOptions {
  std::vector<std::string> reports;
  std::string scores;
  std::string dataset;
  std::string feature;
  std::size_t top_k = 10;
  std::size_t displacement = 0;
  std::string out;
};

int CmdReport(const ReportOptions& o, std::ostream& out) {
  json doc = {{"format", "pairrank-summary/1"}};
  if (!o.reports.empty()) {
    std::vector<MetricResult> results;
    for (const std::string& path : o.reports) {
      const json report = json::parse(ReadFile(path), nullptr, false);
      if (report.is_discarded() || !report.contains("results")) {
        throw ValidationError(path + ": not a pairrank report");
      }
      for (const json& r : report["results"]) {
        results.push_back(MetricFromJson(r));
      }
    }
    doc["averages"] = json::array();
    out << "metric\tfeatures\tsamples\tmacro\tmicro\n";
    for (const MetricAverage& avg : AverageMetrics(results)) {
      out << avg.metric << "\t" << avg.features << "\t" << avg.samples
          << "\tmacro=" << Fixed(avg.macro) << "\tmicro=" << Fixed(avg.micro)
          << "\n";
      doc["averages"].push_back({{"metric", avg.metric},
                                 {"features", avg.features},
                                 {"samples", avg.samples},
                                 {"macro", avg.macro},
                                 {"micro", avg.micro}});
    }
  }

  if (!o.scores.empty()) {
    const ScoresFile scores = LoadScores(o.scores);
    std::vector<Entity> entities;
    std::optional<DatasetFile> dataset;
    if (!o.dataset.empty()) {
      dataset = LoadDataset(o.dataset);
      entities = dataset->entities;
    }
    const Ranking predicted = RankingFromScores(scores.scores);
    const TopBottom tb = TopBottomReport(predicted, o.top_k, entities);
    if (tb.note) out << "note: " << *tb.note << "\n";
    out << "top " << tb.top.size() << ":\n";
    for (const auto& name : tb.top) out << "  " << name << "\n";
    out << "bottom " << tb.bottom.size() << ":\n";
    for (const auto& name : tb.bottom) out << "  " << name << "\n";
    doc["top"] = tb.top;
    doc["bottom"] = tb.bottom;

    if (o.displacement > 0) {
      const std::string feature_id =
          o.feature.empty() ? scores.feature_id : o.feature;
      if (!dataset || !dataset->HasValues(feature_id)) {
        throw ValidationError("--displacement needs --dataset with values "
                              "for '" + feature_id + "'");
      }
      const Ranking truth =
          RankingFromGroundTruth(dataset->GroundTruth(feature_id));
      const auto shifts = RankDisplacement(predicted, truth);
      const auto extremes = MostDisplaced(shifts, o.displacement);
      out << "ranked too high:\n";
      for (const auto& [id, d] : extremes.too_high) {
        out << "  " << id << "\t+" << d << "\n";
      }
      out << "ranked too low:\n";
      for (const auto& [id, d] : extremes.too_low) {
        out << "  " << id << "\t" << d << "\n";
      }
      doc["too_high"] = extremes.too_high;
      doc["too_low"] = extremes.too_low;
    }
  }
  if (o.reports.empty() && o.scores.empty()) {
    throw ValidationError("report needs --reports or --scores");
  }
  if (!o.out.empty()) WriteFileAtomically(o.out, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

Collected CollectJudgments(Judge& judge, std::span<const JudgeQuery> queries,
                           std::size_t jobs) {
  std::vector<std::optional<PairwiseJudgment>> slots(queries.size());
  std::atomic<std::size_t> next = 0;
  std::atomic<bool> stop = false;
  std::mutex failure_mutex;
  Collected collected;
  std::exception_ptr other_error;

  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= queries.size()) return;
      try {
        slots[i] = judge.Evaluate(queries[i]);
      } catch (const RemoteJudgeError& e) {
        std::lock_guard lock(failure_mutex);
        if (!collected.failure) {
          collected.failure = std::make_unique<RemoteJudgeError>(e);
        }
        stop = true;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!other_error) other_error = std::current_exception();
        stop = true;
      }
    }
  };
  const std::size_t threads =
      std::max<std::size_t>(1, std::min(jobs, queries.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (other_error) std::rethrow_exception(other_error);
  for (auto& slot : slots) {
    if (slot) collected.judgments.push_back(std::move(*slot));
  }
  return collected;
}

std::vector<TrendCell> SimulateTrend(const SimulationConfig& config) {
  if (config.n < 2) throw ValidationError("--n must be at least 2");
  if (config.trials < 1) throw ValidationError("--trials must be at least 1");
  if (!(config.flip_probability >= 0.0 && config.flip_probability <= 1.0)) {
    throw ValidationError("--flip must lie in [0, 1]");
  }
  if (config.ks.empty() || config.methods.empty()) {
    throw ValidationError("--k and --methods must be non-empty");
  }
  for (const auto& m : config.methods) {
    if (m != "count" && m != "svm" && m != "bt") {
      throw ValidationError("unknown aggregation method '" + m + "'");
    }
  }
  ValidateSvmConfig(config.svm);
  ValidateBtFitConfig(config.bt);

  const FeatureSpec feature{"synthetic", "items", "Is", "greater",
                            "the greatest", true};
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < config.n; ++i) {
    entities.push_back({"e" + std::to_string(i), "item " + std::to_string(i)});
  }

  // rho[method][k] over trials.
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> rhos;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed = SplitMix64(config.seed + trial);
    std::mt19937_64 rng(trial_seed);
    std::vector<std::size_t> values(config.n);
    std::iota(values.begin(), values.end(), std::size_t{1});
    StableShuffle(values.begin(), values.end(), rng);
    GroundTruthRanking gt{feature, {}};
    for (std::size_t i = 0; i < config.n; ++i) {
      gt.values[entities[i].id] = static_cast<double>(values[i]);
    }
    const Ranking truth = RankingFromGroundTruth(gt);
    SimulatedJudge judge({gt, config.flip_probability, trial_seed, {}});

    for (std::size_t k : config.ks) {
      const auto pairs =
          SampleKPerEntity(entities, k, SplitMix64(trial_seed ^ (k + 1)));
      std::vector<PairwiseJudgment> judgments;
      judgments.reserve(pairs.size());
      for (const EntityPair& p : pairs) {
        judgments.push_back(
            judge.Evaluate({feature, entities[p.first], entities[p.second]}));
      }
      for (const std::string& method : config.methods) {
        const AggregateResult result =
            RunMethod(method, judgments, entities, config.svm, config.bt);
        rhos[{method, k}].push_back(
            SpearmanRho(RankingFromScores(result.scores), truth));
      }
    }
  }

  std::vector<TrendCell> cells;
  for (const std::string& method : config.methods) {
    for (std::size_t k : config.ks) {
      const auto& v = rhos[{method, k}];
      TrendCell cell{method, k, v.size(), 0.0, 0.0};
      for (double r : v) cell.mean_rho += r;
      cell.mean_rho /= static_cast<double>(v.size());
      if (v.size() > 1) {
        double ss = 0.0;
        for (double r : v) ss += (r - cell.mean_rho) * (r - cell.mean_rho);
        cell.sd_rho = std::sqrt(ss / static_cast<double>(v.size() - 1));
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string TrendCsv(std::span<const TrendCell> cells) {
  std::string csv = "method,k,trials,mean_rho,sd_rho\n";
  for (const TrendCell& c : cells) {
    csv += c.method + "," + std::to_string(c.k) + "," +
           std::to_string(c.trials) + "," + Fixed(c.mean_rho) + "," +
           Fixed(c.sd_rho) + "\n";
  }
  return csv;
}

int RunPairrank(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Rank entities along a feature from pairwise judgments",
               "pairrank"};
  app.set_config("--config", "", "TOML/INI file supplying flag defaults");
  app.require_subcommand(1);

  JudgeOptions judge_opts;
  auto* judge = app.add_subcommand("judge", "Sample pairs and collect judgments");
  judge->add_option("--dataset", judge_opts.dataset, "Dataset JSON")->required();
  judge->add_option("--feature", judge_opts.feature, "Feature id")->required();
  judge->add_option("--sampler", judge_opts.sampler)
      ->check(CLI::IsMember({"random", "per-entity", "exhaustive"}));
  judge->add_option("--pairs", judge_opts.pairs, "Pairs for --sampler random");
  judge->add_option("--k", judge_opts.k, "Pairs per entity for per-entity");
  judge->add_option("--seed", judge_opts.seed)->envname("PAIRRANK_SEED");
  judge->add_option("--entities", judge_opts.limit,
                    "Use only the first N entities (0 = all)");
  judge->add_option("--judge", judge_opts.judge)
      ->check(CLI::IsMember({"sim", "llm"}));
  judge->add_option("--flip", judge_opts.flip, "Simulated flip probability")
      ->check(CLI::Range(0.0, 1.0));
  judge->add_option("--difficulty-scale", judge_opts.difficulty_scale,
                    "Shrink flips with value gap (0 = uniform noise)");
  judge->add_option("--endpoint", judge_opts.endpoint)
      ->envname("PAIRRANK_ENDPOINT");
  judge->add_option("--model", judge_opts.model)->envname("PAIRRANK_MODEL");
  judge->add_option("--temperature", judge_opts.temperature);
  judge->add_option("--timeout-ms", judge_opts.timeout_ms);
  judge->add_option("--retries", judge_opts.retries);
  judge->add_option("--backoff-ms", judge_opts.backoff_ms);
  judge->add_option("--mode", judge_opts.mode)
      ->check(CLI::IsMember({"zero-shot", "few-shot"}));
  judge->add_option("--cache", judge_opts.cache, "JSONL judgment cache");
  judge->add_option("--jobs", judge_opts.jobs, "Concurrent judge queries")
      ->envname("PAIRRANK_JOBS")
      ->check(CLI::PositiveNumber);
  judge->add_option("--out", judge_opts.out, "Judgments JSONL")->required();

  AggregateOptions agg_opts;
  auto* aggregate = app.add_subcommand("aggregate", "Score entities");
  aggregate->add_option("--judgments", agg_opts.judgments)->required();
  aggregate->add_option("--method", agg_opts.method)->required();
  aggregate->add_option("--dataset", agg_opts.dataset,
                        "Fixes the entity list and order");
  aggregate->add_option("--feature", agg_opts.feature);
  aggregate->add_option("--lambda", agg_opts.lambda);
  aggregate->add_option("--svm-epochs", agg_opts.svm_epochs);
  aggregate->add_option("--svm-solver", agg_opts.solver)
      ->check(CLI::IsMember({"dual-cd", "safeguarded", "pegasos"}));
  aggregate->add_option("--lr", agg_opts.lr);
  aggregate->add_option("--bt-epochs", agg_opts.bt_epochs);
  aggregate->add_option("--l2", agg_opts.l2);
  aggregate->add_option("--seed", agg_opts.seed)->envname("PAIRRANK_SEED");
  aggregate->add_option("--out", agg_opts.out, "Scores JSON")->required();

  EvaluateOptions eval_opts;
  std::uint64_t eval_seed = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Score against ground truth");
  evaluate->add_option("--dataset", eval_opts.dataset)->required();
  evaluate->add_option("--feature", eval_opts.feature)->required();
  evaluate->add_option("--scores", eval_opts.scores);
  evaluate->add_option("--judgments", eval_opts.judgments);
  evaluate->add_option("--reference-judgments", eval_opts.reference);
  evaluate->add_option("--metrics", eval_opts.metrics)->delimiter(',');
  auto* eval_seed_opt = evaluate->add_option("--seed", eval_seed);
  evaluate->add_option("--top-k", eval_opts.top_k);
  evaluate->add_option("--out", eval_opts.out, "Report JSON");

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Synthetic budget trends");
  simulate->add_option("--n", sim_opts.config.n);
  simulate->add_option("--flip", sim_opts.config.flip_probability)
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--k", sim_opts.config.ks)->delimiter(',');
  simulate->add_option("--methods", sim_opts.config.methods)->delimiter(',');
  simulate->add_option("--trials", sim_opts.config.trials);
  simulate->add_option("--seed", sim_opts.config.seed)
      ->envname("PAIRRANK_SEED");
  simulate->add_option("--lambda", sim_opts.config.svm.lambda);
  simulate->add_option("--svm-epochs", sim_opts.config.svm.epochs);
  simulate->add_option("--svm-solver", sim_opts.solver)
      ->check(CLI::IsMember({"dual-cd", "safeguarded", "pegasos"}));
  simulate->add_option("--lr", sim_opts.config.bt.learning_rate);
  simulate->add_option("--bt-epochs", sim_opts.config.bt.epochs);
  simulate->add_option("--l2", sim_opts.config.bt.l2);
  simulate->add_option("--out", sim_opts.out, "CSV (stdout when omitted)");

  ReportOptions report_opts;
  auto* report = app.add_subcommand("report", "Summaries and error analysis");
  report->add_option("--reports", report_opts.reports,
                     "Evaluate reports to average (macro and micro)");
  report->add_option("--scores", report_opts.scores);
  report->add_option("--dataset", report_opts.dataset);
  report->add_option("--feature", report_opts.feature);
  report->add_option("--top-k", report_opts.top_k)->check(CLI::PositiveNumber);
  report->add_option("--displacement", report_opts.displacement,
                     "Show the N most over- and under-ranked entities");
  report->add_option("--out", report_opts.out, "Summary JSON");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("pairrank");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*judge) return CmdJudge(judge_opts, out, err);
    if (*aggregate) return CmdAggregate(agg_opts, out);
    if (*evaluate) {
      if (*eval_seed_opt) eval_opts.seed = eval_seed;
      return CmdEvaluate(eval_opts, out);
    }
    if (*simulate) return CmdSimulate(sim_opts, out);
    if (*report) return CmdReport(report_opts, out);
  } catch (const RemoteJudgeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRemote;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pairrank::cli
