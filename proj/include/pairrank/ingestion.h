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

// File formats.
//
//   dataset   one JSON document, "format": "pairrank-dataset/1"
//   judgments JSONL; an optional first header line carries
//             "format": "pairrank-judgments/1" and provenance, every other
//             line is one judgment
//   scores    one JSON document, "format": "pairrank-scores/1"

#ifndef PAIRRANK_INGESTION_H_
#define PAIRRANK_INGESTION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairrank/domain.h"

namespace pairrank {

inline constexpr char kDatasetFormat[] = "pairrank-dataset/1";
inline constexpr char kJudgmentsFormat[] = "pairrank-judgments/1";
inline constexpr char kScoresFormat[] = "pairrank-scores/1";

struct DatasetFile {
  std::string name;
  std::vector<FeatureSpec> features;
  std::vector<Entity> entities;
  // feature id -> entity id -> value. Features without a table are
  // judgment-only.
  std::map<std::string, std::map<std::string, double>> values;

  const FeatureSpec& Feature(const std::string& feature_id) const;
  bool HasValues(const std::string& feature_id) const;
  GroundTruthRanking GroundTruth(const std::string& feature_id) const;
  // Entities carrying a value for `feature_id`, in dataset order.
  std::vector<Entity> ValuedEntities(const std::string& feature_id) const;
};

DatasetFile ParseDataset(const nlohmann::json& doc);
nlohmann::json DatasetToJson(const DatasetFile& dataset);
DatasetFile LoadDataset(const std::filesystem::path& path);
void SaveDataset(const DatasetFile& dataset, const std::filesystem::path& path);

nlohmann::json JudgmentToJson(const PairwiseJudgment& judgment);
PairwiseJudgment JudgmentFromJson(const nlohmann::json& record);

// Writes nothing at all for an empty list without provenance.
void SaveJudgments(std::span<const PairwiseJudgment> judgments,
                   const std::filesystem::path& path,
                   const std::optional<nlohmann::json>& provenance = {});
std::vector<PairwiseJudgment> LoadJudgments(const std::filesystem::path& path);

struct ScoresFile {
  std::string method;
  std::string feature_id;
  nlohmann::json config = nlohmann::json::object();
  ScoreVector scores;
  std::vector<std::string> uncompared;
};

nlohmann::json ScoresToJson(const ScoresFile& scores);
ScoresFile ScoresFromJson(const nlohmann::json& doc);
void SaveScores(const ScoresFile& scores, const std::filesystem::path& path);
ScoresFile LoadScores(const std::filesystem::path& path);

// Reads a whole file; throws ValidationError when it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling and rename, so readers never see a torn
// file.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& contents);

}  // namespace pairrank

#endif  // PAIRRANK_INGESTION_H_
