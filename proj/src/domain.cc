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

#include "pairrank/domain.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace pairrank {
namespace {

std::string Quoted(std::string_view s) {
  return "'" + std::string(s) + "'";
}

// Sorts by key descending (ties by id) and groups exactly equal keys.
Ranking GroupSorted(std::vector<std::pair<double, std::string>> keyed) {
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  Ranking ranking;
  std::size_t start = 0;
  while (start < keyed.size()) {
    std::size_t end = start;
    std::vector<std::string> group;
    while (end < keyed.size() && keyed[end].first == keyed[start].first) {
      group.push_back(keyed[end].second);
      ++end;
    }
    // Raw positions start+1 .. end, averaged.
    const double position = (static_cast<double>(start + 1) + end) / 2.0;
    for (const auto& id : group) ranking.positions[id] = position;
    ranking.ordered.push_back(std::move(group));
    start = end;
  }
  return ranking;
}

}  // namespace

void ValidateFeature(const FeatureSpec& feature) {
  if (feature.id.empty()) throw ValidationError("feature id is empty");
  if (feature.entity_type.empty()) {
    throw ValidationError("feature " + Quoted(feature.id) +
                          ": entity_type is empty");
  }
  if (feature.comparative.empty()) {
    throw ValidationError("feature " + Quoted(feature.id) +
                          ": comparative is empty");
  }
  if (feature.auxiliary != "Is" && feature.auxiliary != "Does" &&
      feature.auxiliary != "Was") {
    throw ValidationError("feature " + Quoted(feature.id) +
                          ": auxiliary must be Is, Does or Was, got " +
                          Quoted(feature.auxiliary));
  }
}

void ValidateEntities(std::span<const Entity> entities) {
  std::set<std::string_view> seen;
  for (const Entity& e : entities) {
    if (e.id.empty()) throw ValidationError("entity with empty id");
    if (e.name.empty()) {
      throw ValidationError("entity " + Quoted(e.id) + " has an empty name");
    }
    if (!seen.insert(e.id).second) {
      throw ValidationError("duplicate entity id " + Quoted(e.id));
    }
  }
}

bool GroundTruthRanking::Contains(std::string_view id) const {
  return values.find(std::string(id)) != values.end();
}

double GroundTruthRanking::ValueOf(std::string_view id) const {
  auto it = values.find(std::string(id));
  if (it == values.end()) {
    throw ValidationError("no ground-truth value for entity " + Quoted(id) +
                          " on feature " + Quoted(feature.id));
  }
  return it->second;
}

void ValidateGroundTruth(const GroundTruthRanking& gt,
                         std::span<const Entity> entities) {
  std::set<std::string_view> known;
  for (const Entity& e : entities) known.insert(e.id);
  for (const auto& [id, value] : gt.values) {
    if (!known.contains(id)) {
      throw ValidationError("feature " + Quoted(gt.feature.id) +
                            ": value for undeclared entity " + Quoted(id));
    }
    if (!std::isfinite(value)) {
      throw ValidationError("feature " + Quoted(gt.feature.id) +
                            ": non-finite value for entity " + Quoted(id));
    }
  }
  if (gt.values.size() < 2) {
    throw ValidationError("feature " + Quoted(gt.feature.id) +
                          ": needs at least two valued entities");
  }
}

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kFirstGreater ? "FIRST_GREATER"
                                           : "SECOND_GREATER";
}

std::string_view SourceName(JudgmentSource source) {
  switch (source) {
    case JudgmentSource::kGroundTruth:
      return "GROUND_TRUTH";
    case JudgmentSource::kSimulated:
      return "SIMULATED";
    case JudgmentSource::kLlm:
      return "LLM";
    case JudgmentSource::kFallbackRandom:
      return "FALLBACK_RANDOM";
  }
  return "UNKNOWN";
}

Verdict ParseVerdict(std::string_view name) {
  if (name == "FIRST_GREATER") return Verdict::kFirstGreater;
  if (name == "SECOND_GREATER") return Verdict::kSecondGreater;
  throw ValidationError("unknown verdict " + Quoted(name));
}

JudgmentSource ParseSource(std::string_view name) {
  for (JudgmentSource s :
       {JudgmentSource::kGroundTruth, JudgmentSource::kSimulated,
        JudgmentSource::kLlm, JudgmentSource::kFallbackRandom}) {
    if (SourceName(s) == name) return s;
  }
  throw ValidationError("unknown judgment source " + Quoted(name));
}

void ValidateJudgment(const PairwiseJudgment& judgment) {
  if (judgment.first.empty() || judgment.second.empty()) {
    throw ValidationError("judgment with empty entity id");
  }
  if (judgment.first == judgment.second) {
    throw ValidationError("judgment compares " + Quoted(judgment.first) +
                          " with itself");
  }
  if (judgment.source == JudgmentSource::kFallbackRandom &&
      !judgment.raw_response.has_value()) {
    throw ValidationError("fallback judgment on (" + judgment.first + ", " +
                          judgment.second + ") lacks its raw response");
  }
}

std::unordered_map<std::string, std::size_t> IndexEntities(
    std::span<const Entity> entities) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (!index.emplace(entities[i].id, i).second) {
      throw ValidationError("duplicate entity id " + Quoted(entities[i].id));
    }
  }
  return index;
}

namespace {

std::size_t Lookup(const std::unordered_map<std::string, std::size_t>& index,
                   const std::string& id) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw ValidationError("judgment references unknown entity " + Quoted(id));
  }
  return it->second;
}

}  // namespace

ComparisonSet BuildComparisonSet(std::span<const PairwiseJudgment> judgments,
                                 std::span<const Entity> entities) {
  const auto index = IndexEntities(entities);
  const std::size_t n = entities.size();
  ComparisonSet cs;
  cs.entity_index.reserve(n);
  for (const Entity& e : entities) cs.entity_index.push_back(e.id);
  cs.compared = SquareMatrix<int>(n);
  cs.outcomes = SquareMatrix<int>(n);
  for (const PairwiseJudgment& j : judgments) {
    if (j.feature_id != judgments.front().feature_id) {
      throw ValidationError("judgments mix features " +
                            Quoted(judgments.front().feature_id) + " and " +
                            Quoted(j.feature_id));
    }
    ValidateJudgment(j);
    const std::size_t w = Lookup(index, j.Winner());
    const std::size_t l = Lookup(index, j.Loser());
    ++cs.compared(w, l);
    ++cs.compared(l, w);
    ++cs.outcomes(w, l);
    --cs.outcomes(l, w);
  }
  return cs;
}

std::vector<DifferenceExample> ToDifferenceExamples(
    std::span<const PairwiseJudgment> judgments,
    std::span<const Entity> entities) {
  const auto index = IndexEntities(entities);
  std::vector<DifferenceExample> examples;
  examples.reserve(judgments.size());
  for (const PairwiseJudgment& j : judgments) {
    ValidateJudgment(j);
    examples.push_back({Lookup(index, j.Winner()), Lookup(index, j.Loser())});
  }
  return examples;
}

void ValidateScores(const ScoreVector& scores) {
  if (scores.entity_index.size() != scores.weights.size()) {
    throw ValidationError("score vector has " +
                          std::to_string(scores.entity_index.size()) +
                          " ids but " + std::to_string(scores.weights.size()) +
                          " weights");
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < scores.weights.size(); ++i) {
    if (!std::isfinite(scores.weights[i])) {
      throw ValidationError("non-finite weight for entity " +
                            Quoted(scores.entity_index[i]));
    }
    if (!seen.insert(scores.entity_index[i]).second) {
      throw ValidationError("duplicate entity id " +
                            Quoted(scores.entity_index[i]) +
                            " in score vector");
    }
  }
}

std::vector<std::string> Ranking::Flattened() const {
  std::vector<std::string> flat;
  flat.reserve(size());
  for (const auto& group : ordered) {
    flat.insert(flat.end(), group.begin(), group.end());
  }
  return flat;
}

Ranking RankingFromScores(const ScoreVector& scores) {
  ValidateScores(scores);
  std::vector<std::pair<double, std::string>> keyed;
  keyed.reserve(scores.weights.size());
  for (std::size_t i = 0; i < scores.weights.size(); ++i) {
    keyed.emplace_back(scores.weights[i], scores.entity_index[i]);
  }
  return GroupSorted(std::move(keyed));
}

Ranking RankingFromGroundTruth(const GroundTruthRanking& gt) {
  std::vector<std::pair<double, std::string>> keyed;
  keyed.reserve(gt.values.size());
  for (const auto& [id, value] : gt.values) {
    keyed.emplace_back(gt.feature.higher_is_more ? value : -value, id);
  }
  return GroupSorted(std::move(keyed));
}

std::optional<Verdict> GroundTruthVerdict(const GroundTruthRanking& gt,
                                          std::string_view first,
                                          std::string_view second) {
  double a = gt.ValueOf(first);
  double b = gt.ValueOf(second);
  if (!gt.feature.higher_is_more) std::swap(a, b);
  if (a > b) return Verdict::kFirstGreater;
  if (a < b) return Verdict::kSecondGreater;
  return std::nullopt;
}

}  // namespace pairrank
