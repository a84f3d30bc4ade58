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

#include "pairrank/ingestion.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace pairrank {

using json = nlohmann::json;

namespace {

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string()) {
    throw ValidationError(where + ": missing string field '" + key + "'");
  }
  return obj[key].get<std::string>();
}

void RequireFormat(const json& doc, const char* expected,
                   const std::string& where) {
  const std::string format = RequireString(doc, "format", where);
  if (format != expected) {
    throw ValidationError(where + ": unsupported format '" + format +
                          "', expected '" + expected + "'");
  }
}

// A dataset error that can be traced back to a source line by matching
// `steps` in order; each step's pattern is matched `count` times.
class RecordError : public ValidationError {
 public:
  struct Step {
    std::string pattern;
    int count = 1;
  };
  RecordError(const std::string& what, std::vector<Step> steps)
      : ValidationError(what), steps_(std::move(steps)) {}
  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
};

// Regex matching `s` as a JSON string literal.
std::string Quoted(const std::string& s) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : json(s).dump()) {
    if (kSpecial.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string Key(const std::string& quoted) { return quoted + R"(\s*:)"; }

std::optional<std::size_t> LocateLine(
    const std::string& text, const std::vector<RecordError::Step>& steps) {
  auto from = text.cbegin();
  auto hit = text.cbegin();
  for (const RecordError::Step& step : steps) {
    const std::regex re(step.pattern);
    for (int i = 0; i < step.count; ++i) {
      std::smatch m;
      if (!std::regex_search(from, text.cend(), m, re)) return std::nullopt;
      hit = m[0].first;
      from = m[0].second;
    }
  }
  return 1 + static_cast<std::size_t>(std::count(text.cbegin(), hit, '\n'));
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

const FeatureSpec& DatasetFile::Feature(const std::string& feature_id) const {
  for (const FeatureSpec& f : features) {
    if (f.id == feature_id) return f;
  }
  throw ValidationError("dataset '" + name + "' has no feature '" +
                        feature_id + "'");
}

bool DatasetFile::HasValues(const std::string& feature_id) const {
  return values.contains(feature_id);
}

GroundTruthRanking DatasetFile::GroundTruth(
    const std::string& feature_id) const {
  GroundTruthRanking gt;
  gt.feature = Feature(feature_id);
  auto it = values.find(feature_id);
  if (it == values.end()) {
    throw ValidationError("feature '" + feature_id +
                          "' has no value table (judgment-only feature)");
  }
  gt.values = it->second;
  return gt;
}

std::vector<Entity> DatasetFile::ValuedEntities(
    const std::string& feature_id) const {
  const GroundTruthRanking gt = GroundTruth(feature_id);
  std::vector<Entity> out;
  for (const Entity& e : entities) {
    if (gt.Contains(e.id)) out.push_back(e);
  }
  return out;
}

DatasetFile ParseDataset(const json& doc) {
  RequireFormat(doc, kDatasetFormat, "dataset");
  DatasetFile dataset;
  dataset.name = RequireString(doc, "name", "dataset");

  if (!doc.contains("features") || !doc["features"].is_array()) {
    throw ValidationError("dataset: 'features' must be an array");
  }
  std::set<std::string> feature_ids;
  for (std::size_t i = 0; i < doc["features"].size(); ++i) {
    const json& f = doc["features"][i];
    const std::string where = "features[" + std::to_string(i) + "]";
    FeatureSpec spec;
    spec.id = RequireString(f, "id", where);
    spec.entity_type = RequireString(f, "entity_type", where);
    spec.auxiliary = RequireString(f, "auxiliary", where);
    spec.comparative = RequireString(f, "comparative", where);
    if (f.contains("superlative")) {
      spec.superlative = RequireString(f, "superlative", where);
    }
    if (f.contains("higher_is_more")) {
      if (!f["higher_is_more"].is_boolean()) {
        throw ValidationError(where + ": 'higher_is_more' must be boolean");
      }
      spec.higher_is_more = f["higher_is_more"].get<bool>();
    }
    try {
      ValidateFeature(spec);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (!feature_ids.insert(spec.id).second) {
      throw RecordError(
          where + ": duplicate feature id '" + spec.id + "'",
          {{Key(R"("features")")},
           {Key(R"("id")") + R"(\s*)" + Quoted(spec.id), 2}});
    }
    dataset.features.push_back(std::move(spec));
  }

  if (!doc.contains("entities") || !doc["entities"].is_array()) {
    throw ValidationError("dataset: 'entities' must be an array");
  }
  std::set<std::string> entity_ids;
  for (std::size_t i = 0; i < doc["entities"].size(); ++i) {
    const json& e = doc["entities"][i];
    const std::string where = "entities[" + std::to_string(i) + "]";
    Entity entity{RequireString(e, "id", where), RequireString(e, "name", where)};
    if (entity.id.empty() || entity.name.empty()) {
      throw ValidationError(where + ": id and name must be non-empty");
    }
    if (!entity_ids.insert(entity.id).second) {
      throw RecordError(
          where + ": duplicate entity id '" + entity.id + "'",
          {{Key(R"("entities")")},
           {Key(R"("id")") + R"(\s*)" + Quoted(entity.id), 2}});
    }
    dataset.entities.push_back(std::move(entity));
  }

  if (doc.contains("values")) {
    if (!doc["values"].is_object()) {
      throw ValidationError("dataset: 'values' must be an object");
    }
    for (const auto& [feature_id, table] : doc["values"].items()) {
      const std::string where = "values." + feature_id;
      const std::vector<RecordError::Step> table_steps = {
          {Key(R"("values")")}, {Key(Quoted(feature_id))}};
      if (!feature_ids.contains(feature_id)) {
        throw RecordError(where + ": undeclared feature", table_steps);
      }
      if (!table.is_object()) {
        throw ValidationError(where + ": must be an object");
      }
      auto& out = dataset.values[feature_id];
      for (const auto& [entity_id, value] : table.items()) {
        auto steps = table_steps;
        steps.push_back({Key(Quoted(entity_id))});
        if (!entity_ids.contains(entity_id)) {
          throw RecordError(
              where + ": value for undeclared entity '" + entity_id + "'",
              steps);
        }
        if (!value.is_number()) {
          throw RecordError(where + "." + entity_id +
                                ": value must be a number",
                            steps);
        }
        out[entity_id] = value.get<double>();
      }
      if (out.size() < 2) {
        throw ValidationError(where + ": needs at least two valued entities");
      }
    }
  }
  return dataset;
}

json DatasetToJson(const DatasetFile& dataset) {
  json features = json::array();
  for (const FeatureSpec& f : dataset.features) {
    features.push_back({{"id", f.id},
                        {"entity_type", f.entity_type},
                        {"auxiliary", f.auxiliary},
                        {"comparative", f.comparative},
                        {"superlative", f.superlative},
                        {"higher_is_more", f.higher_is_more}});
  }
  json entities = json::array();
  for (const Entity& e : dataset.entities) {
    entities.push_back({{"id", e.id}, {"name", e.name}});
  }
  json values = json::object();
  for (const auto& [feature_id, table] : dataset.values) {
    json t = json::object();
    for (const auto& [id, v] : table) t[id] = v;
    values[feature_id] = std::move(t);
  }
  return {{"format", kDatasetFormat},
          {"name", dataset.name},
          {"features", std::move(features)},
          {"entities", std::move(entities)},
          {"values", std::move(values)}};
}

DatasetFile LoadDataset(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return ParseDataset(doc);
  } catch (const RecordError& e) {
    const auto line = LocateLine(text, e.steps());
    throw ValidationError(path.string() +
                          (line ? ":" + std::to_string(*line) : "") + ": " +
                          e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void SaveDataset(const DatasetFile& dataset,
                 const std::filesystem::path& path) {
  WriteFileAtomically(path, DatasetToJson(dataset).dump(2) + "\n");
}

json JudgmentToJson(const PairwiseJudgment& judgment) {
  json record = {{"feature_id", judgment.feature_id},
                 {"first", judgment.first},
                 {"second", judgment.second},
                 {"verdict", VerdictName(judgment.verdict)},
                 {"source", SourceName(judgment.source)}};
  if (judgment.raw_response) {
    record["raw_response"] = *judgment.raw_response;
  } else {
    record["raw_response"] = nullptr;
  }
  return record;
}

PairwiseJudgment JudgmentFromJson(const json& record) {
  PairwiseJudgment j;
  j.feature_id = RequireString(record, "feature_id", "judgment");
  j.first = RequireString(record, "first", "judgment");
  j.second = RequireString(record, "second", "judgment");
  j.verdict = ParseVerdict(RequireString(record, "verdict", "judgment"));
  j.source = ParseSource(RequireString(record, "source", "judgment"));
  if (record.contains("raw_response") && !record["raw_response"].is_null()) {
    j.raw_response = RequireString(record, "raw_response", "judgment");
  }
  ValidateJudgment(j);
  return j;
}

void SaveJudgments(std::span<const PairwiseJudgment> judgments,
                   const std::filesystem::path& path,
                   const std::optional<json>& provenance) {
  std::string out;
  if (provenance) {
    json header = {{"format", kJudgmentsFormat},
                   {"provenance", *provenance}};
    out += header.dump() + "\n";
  } else if (!judgments.empty()) {
    out += json({{"format", kJudgmentsFormat}}).dump() + "\n";
  }
  for (const PairwiseJudgment& j : judgments) {
    out += JudgmentToJson(j).dump() + "\n";
  }
  WriteFileAtomically(path, out);
}

std::vector<PairwiseJudgment> LoadJudgments(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<PairwiseJudgment> judgments;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (record.is_object() && record.contains("format")) {
      if (line_no != 1) {
        throw ValidationError(where + ": header line must come first");
      }
      try {
        RequireFormat(record, kJudgmentsFormat, "header");
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
      continue;
    }
    try {
      judgments.push_back(JudgmentFromJson(record));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return judgments;
}

json ScoresToJson(const ScoresFile& scores) {
  json entries = json::array();
  for (std::size_t i = 0; i < scores.scores.weights.size(); ++i) {
    entries.push_back({{"id", scores.scores.entity_index[i]},
                       {"weight", scores.scores.weights[i]}});
  }
  return {{"format", kScoresFormat},
          {"method", scores.method},
          {"feature_id", scores.feature_id},
          {"config", scores.config},
          {"scores", std::move(entries)},
          {"uncompared", scores.uncompared}};
}

ScoresFile ScoresFromJson(const json& doc) {
  RequireFormat(doc, kScoresFormat, "scores");
  ScoresFile out;
  out.method = RequireString(doc, "method", "scores");
  out.feature_id = RequireString(doc, "feature_id", "scores");
  if (doc.contains("config")) out.config = doc["config"];
  if (!doc.contains("scores") || !doc["scores"].is_array()) {
    throw ValidationError("scores: 'scores' must be an array");
  }
  for (std::size_t i = 0; i < doc["scores"].size(); ++i) {
    const json& entry = doc["scores"][i];
    const std::string where = "scores[" + std::to_string(i) + "]";
    out.scores.entity_index.push_back(RequireString(entry, "id", where));
    if (!entry.contains("weight") || !entry["weight"].is_number()) {
      throw ValidationError(where + ": missing numeric 'weight'");
    }
    out.scores.weights.push_back(entry["weight"].get<double>());
  }
  if (doc.contains("uncompared")) {
    out.uncompared = doc["uncompared"].get<std::vector<std::string>>();
  }
  ValidateScores(out.scores);
  return out;
}

void SaveScores(const ScoresFile& scores, const std::filesystem::path& path) {
  WriteFileAtomically(path, ScoresToJson(scores).dump(2) + "\n");
}

ScoresFile LoadScores(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return ScoresFromJson(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace pairrank
