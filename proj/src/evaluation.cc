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

#include "pairrank/evaluation.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace pairrank {
namespace {

void RequireSameEntities(const Ranking& a, const Ranking& b) {
  std::vector<std::string> missing;
  for (const auto& [id, pos] : a.positions) {
    if (!b.positions.contains(id)) missing.push_back(id);
  }
  for (const auto& [id, pos] : b.positions) {
    if (!a.positions.contains(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw ValidationError("rankings cover different entities; unmatched: " +
                          list);
  }
}

std::pair<std::string, std::string> UnorderedKey(const std::string& a,
                                                 const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

double PairwiseAccuracy(std::span<const PairwiseJudgment> predicted,
                        const GroundTruthRanking& gt) {
  if (predicted.empty()) {
    throw ValidationError("accuracy needs at least one judgment");
  }
  std::size_t correct = 0;
  for (const PairwiseJudgment& j : predicted) {
    const auto truth = GroundTruthVerdict(gt, j.first, j.second);
    if (!truth) {
      throw ValidationError("pair ('" + j.first + "', '" + j.second +
                            "') is tied in ground truth");
    }
    if (*truth == j.verdict) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

double PairwiseAccuracyAgainst(std::span<const PairwiseJudgment> predicted,
                               std::span<const PairwiseJudgment> reference) {
  if (predicted.empty()) {
    throw ValidationError("accuracy needs at least one judgment");
  }
  std::map<std::pair<std::string, std::string>, std::string> winners;
  for (const PairwiseJudgment& r : reference) {
    auto [it, inserted] =
        winners.emplace(UnorderedKey(r.first, r.second), r.Winner());
    if (!inserted && it->second != r.Winner()) {
      throw ValidationError("reference judgments disagree on ('" + r.first +
                            "', '" + r.second + "')");
    }
  }
  std::size_t correct = 0;
  for (const PairwiseJudgment& j : predicted) {
    auto it = winners.find(UnorderedKey(j.first, j.second));
    if (it == winners.end()) {
      throw ValidationError("no reference judgment for ('" + j.first +
                            "', '" + j.second + "')");
    }
    if (it->second == j.Winner()) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

double SpearmanRho(const Ranking& predicted, const Ranking& truth) {
  RequireSameEntities(predicted, truth);
  const std::size_t n = predicted.positions.size();
  if (n < 2) throw ValidationError("Spearman rho needs at least two entities");

  std::vector<double> x;
  std::vector<double> y;
  x.reserve(n);
  y.reserve(n);
  for (const auto& [id, pos] : predicted.positions) {
    x.push_back(pos);
    y.push_back(truth.positions.at(id));
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return x == y ? 1.0 : 0.0;
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

TopBottom TopBottomReport(const Ranking& ranking, std::size_t k,
                          std::span<const Entity> entities) {
  if (k < 1) throw ValidationError("k must be at least 1");
  std::vector<std::string> flat = ranking.Flattened();
  if (!entities.empty()) {
    std::map<std::string, std::string> names;
    for (const Entity& e : entities) names[e.id] = e.name;
    for (std::string& id : flat) {
      auto it = names.find(id);
      if (it != names.end()) id = it->second;
    }
  }
  TopBottom report;
  if (k > flat.size()) {
    report.note = "k=" + std::to_string(k) + " exceeds the " +
                  std::to_string(flat.size()) +
                  " ranked entities; showing the full ranking";
    k = flat.size();
  }
  report.top.assign(flat.begin(), flat.begin() + k);
  report.bottom.assign(flat.end() - k, flat.end());
  return report;
}

std::map<std::string, int> RankDisplacement(const Ranking& predicted,
                                            const Ranking& truth) {
  RequireSameEntities(predicted, truth);
  std::map<std::string, int> predicted_pos;
  const auto flat_predicted = predicted.Flattened();
  for (std::size_t i = 0; i < flat_predicted.size(); ++i) {
    predicted_pos[flat_predicted[i]] = static_cast<int>(i) + 1;
  }
  std::map<std::string, int> shifts;
  const auto flat_truth = truth.Flattened();
  for (std::size_t i = 0; i < flat_truth.size(); ++i) {
    shifts[flat_truth[i]] =
        static_cast<int>(i) + 1 - predicted_pos.at(flat_truth[i]);
  }
  return shifts;
}

DisplacementExtremes MostDisplaced(const std::map<std::string, int>& shifts,
                                   std::size_t m) {
  std::vector<std::pair<std::string, int>> entries(shifts.begin(),
                                                   shifts.end());
  DisplacementExtremes out;
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  for (const auto& e : entries) {
    if (out.too_high.size() == m || e.second <= 0) break;
    out.too_high.push_back(e);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) {
                     return a.second < b.second;
                   });
  for (const auto& e : entries) {
    if (out.too_low.size() == m || e.second >= 0) break;
    out.too_low.push_back(e);
  }
  return out;
}

nlohmann::json MetricToJson(const MetricResult& result) {
  return {{"feature_id", result.feature_id},
          {"metric", result.metric},
          {"value", result.value},
          {"sample_count", result.sample_count},
          {"seed", result.seed}};
}

MetricResult MetricFromJson(const nlohmann::json& record) {
  try {
    MetricResult r;
    r.feature_id = record.at("feature_id").get<std::string>();
    r.metric = record.at("metric").get<std::string>();
    r.value = record.at("value").get<double>();
    r.sample_count = record.at("sample_count").get<std::size_t>();
    r.seed = record.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed metric record: ") +
                          e.what());
  }
}

std::vector<MetricAverage> AverageMetrics(
    std::span<const MetricResult> results) {
  std::map<std::string, MetricAverage> by_metric;
  std::map<std::string, double> weighted;
  for (const MetricResult& r : results) {
    MetricAverage& avg = by_metric[r.metric];
    avg.metric = r.metric;
    avg.macro += r.value;
    avg.features += 1;
    avg.samples += r.sample_count;
    weighted[r.metric] += r.value * static_cast<double>(r.sample_count);
  }
  std::vector<MetricAverage> out;
  for (auto& [metric, avg] : by_metric) {
    avg.macro /= static_cast<double>(avg.features);
    avg.micro = avg.samples > 0
                    ? weighted[metric] / static_cast<double>(avg.samples)
                    : avg.macro;
    out.push_back(avg);
  }
  return out;
}

}  // namespace pairrank
