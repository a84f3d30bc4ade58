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

#ifndef PAIRRANK_EVALUATION_H_
#define PAIRRANK_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pairrank/domain.h"

namespace pairrank {

// Fraction of judgments agreeing with ground truth. Tied pairs are rejected.
double PairwiseAccuracy(std::span<const PairwiseJudgment> predicted,
                        const GroundTruthRanking& gt);

// Accuracy against reference judgments (for features known only through
// pairwise labels). Pairs are matched regardless of direction.
double PairwiseAccuracyAgainst(std::span<const PairwiseJudgment> predicted,
                               std::span<const PairwiseJudgment> reference);

// Pearson correlation of the average-rank position vectors. When either
// vector is constant the correlation is undefined; that case returns 1 if
// the two vectors are equal and 0 otherwise.
double SpearmanRho(const Ranking& predicted, const Ranking& truth);

struct TopBottom {
  std::vector<std::string> top;     // best first
  std::vector<std::string> bottom;  // ranking order, worst last
  std::optional<std::string> note;
};

// Ties are broken by entity id. When `entities` is non-empty, names are
// reported instead of ids.
TopBottom TopBottomReport(const Ranking& ranking, std::size_t k,
                          std::span<const Entity> entities = {});

// Per entity: truth position minus predicted position, using positions in
// the flattened (id-tie-broken) orders. Positive means ranked too high.
std::map<std::string, int> RankDisplacement(const Ranking& predicted,
                                            const Ranking& truth);

struct DisplacementExtremes {
  std::vector<std::pair<std::string, int>> too_high;  // largest first
  std::vector<std::pair<std::string, int>> too_low;   // most negative first
};

DisplacementExtremes MostDisplaced(const std::map<std::string, int>& shifts,
                                   std::size_t m);

struct MetricResult {
  std::string feature_id;
  std::string metric;  // "accuracy" or "spearman"
  double value = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

nlohmann::json MetricToJson(const MetricResult& result);
MetricResult MetricFromJson(const nlohmann::json& record);

struct MetricAverage {
  std::string metric;
  double macro = 0.0;  // mean over features
  double micro = 0.0;  // weighted by sample_count
  std::size_t features = 0;
  std::size_t samples = 0;
};

std::vector<MetricAverage> AverageMetrics(
    std::span<const MetricResult> results);

}  // namespace pairrank

#endif  // PAIRRANK_EVALUATION_H_
