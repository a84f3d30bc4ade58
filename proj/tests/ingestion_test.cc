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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace pairrank {
namespace {

using ::pairrank::testing::MakeEntities;
using ::pairrank::testing::RandomJudgments;
using ::pairrank::testing::TempDir;

constexpr char kDataset[] = R"({
  "format": "pairrank-dataset/1",
  "name": "mini",
  "features": [
    {"id": "length", "entity_type": "rivers", "auxiliary": "Is",
     "comparative": "longer", "superlative": "the longest"},
    {"id": "founded", "entity_type": "companies", "auxiliary": "Was",
     "comparative": "founded after", "higher_is_more": true},
    {"id": "size", "entity_type": "rivers", "auxiliary": "Is",
     "comparative": "bigger"}
  ],
  "entities": [
    {"id": "nile", "name": "Nile"},
    {"id": "thames", "name": "River Thames"},
    {"id": "seine", "name": "Seine"}
  ],
  "values": {
    "length": {"nile": 6650, "thames": 346, "seine": 777},
    "founded": {"nile": 1, "seine": 2}
  }
}
)";

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string ErrorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(DatasetTest, LoadsAndOrders) {
  TempDir dir;
  WriteText(dir.File("d.json"), kDataset);
  const DatasetFile d = LoadDataset(dir.File("d.json"));
  EXPECT_EQ(d.name, "mini");
  ASSERT_EQ(d.entities.size(), 3u);
  EXPECT_EQ(d.entities[0].id, "nile");
  EXPECT_EQ(d.entities[1].name, "River Thames");
  EXPECT_EQ(d.entities[2].id, "seine");
  EXPECT_EQ(d.Feature("length").superlative, "the longest");
  EXPECT_EQ(d.Feature("founded").auxiliary, "Was");
  EXPECT_TRUE(d.HasValues("length"));
  EXPECT_FALSE(d.HasValues("size"));
  EXPECT_EQ(d.GroundTruth("length").values.at("thames"), 346);
  const auto valued = d.ValuedEntities("founded");
  ASSERT_EQ(valued.size(), 2u);
  EXPECT_EQ(valued[0].id, "nile");
  EXPECT_EQ(valued[1].id, "seine");
  EXPECT_THROW(d.Feature("colour"), ValidationError);
  EXPECT_THROW(d.GroundTruth("size"), ValidationError);
}

TEST(DatasetTest, RoundTrip) {
  TempDir dir;
  WriteText(dir.File("d.json"), kDataset);
  const DatasetFile d = LoadDataset(dir.File("d.json"));
  SaveDataset(d, dir.File("copy.json"));
  const DatasetFile e = LoadDataset(dir.File("copy.json"));
  EXPECT_EQ(DatasetToJson(d), DatasetToJson(e));
  EXPECT_EQ(e.entities.size(), d.entities.size());
  for (std::size_t i = 0; i < d.entities.size(); ++i) {
    EXPECT_EQ(e.entities[i].id, d.entities[i].id);
  }
}

TEST(DatasetTest, UndeclaredEntityNamedWithLine) {
  TempDir dir;
  std::string text = kDataset;
  text.replace(text.find("\"seine\": 777"), 12, "\"danube\": 2850");
  WriteText(dir.File("d.json"), text);
  const std::string error = ErrorOf([&] { LoadDataset(dir.File("d.json")); });
  EXPECT_NE(error.find("danube"), std::string::npos) << error;
  EXPECT_NE(error.find("d.json:18:"), std::string::npos) << error;
}

TEST(DatasetTest, DuplicateEntityNamedWithLine) {
  TempDir dir;
  std::string text = kDataset;
  text.replace(text.find("\"seine\", \"name\""), 7, "\"thames\"");
  WriteText(dir.File("d.json"), text);
  const std::string error = ErrorOf([&] { LoadDataset(dir.File("d.json")); });
  EXPECT_NE(error.find("duplicate entity id 'thames'"), std::string::npos)
      << error;
  EXPECT_NE(error.find("d.json:15:"), std::string::npos) << error;
}

TEST(DatasetTest, OtherRejections) {
  auto doc = nlohmann::json::parse(kDataset);
  auto bad = doc;
  bad["format"] = "pairrank-dataset/9";
  EXPECT_THROW(ParseDataset(bad), ValidationError);
  bad = doc;
  bad["values"]["length"] = {{"nile", 1}};
  EXPECT_NE(ErrorOf([&] { ParseDataset(bad); }).find("at least two"),
            std::string::npos);
  bad = doc;
  bad["values"]["colour"] = {{"nile", 1}, {"seine", 2}};
  EXPECT_NE(ErrorOf([&] { ParseDataset(bad); }).find("undeclared feature"),
            std::string::npos);
  bad = doc;
  bad["values"]["length"]["nile"] = "long";
  EXPECT_THROW(ParseDataset(bad), ValidationError);
  bad = doc;
  bad["features"][0]["auxiliary"] = "Are";
  EXPECT_NE(ErrorOf([&] { ParseDataset(bad); }).find("features[0]"),
            std::string::npos);
  bad = doc;
  bad["features"][1]["id"] = "length";
  EXPECT_NE(ErrorOf([&] { ParseDataset(bad); }).find("duplicate feature"),
            std::string::npos);
  TempDir dir;
  WriteText(dir.File("broken.json"), "{\"format\": ");
  EXPECT_NE(ErrorOf([&] { LoadDataset(dir.File("broken.json")); })
                .find("broken.json"),
            std::string::npos);
  EXPECT_THROW(LoadDataset(dir.File("missing.json")), ValidationError);
}

TEST(JudgmentsFileTest, EmptyRoundTrip) {
  TempDir dir;
  SaveJudgments({}, dir.File("j.jsonl"));
  EXPECT_EQ(ReadFile(dir.File("j.jsonl")), "");
  EXPECT_TRUE(LoadJudgments(dir.File("j.jsonl")).empty());
}

TEST(JudgmentsFileTest, FiveHundredRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(1);
  const auto entities = MakeEntities(40);
  auto judgments = RandomJudgments(entities, 500, rng);
  for (std::size_t i = 0; i < judgments.size(); i += 3) {
    judgments[i].source = JudgmentSource::kLlm;
    judgments[i].raw_response = i % 2 ? "Yes." : "no \"really\"\n";
  }
  judgments[7].source = JudgmentSource::kFallbackRandom;
  judgments[7].raw_response = "";
  SaveJudgments(judgments, dir.File("j.jsonl"),
                nlohmann::json{{"judge", "sim"}, {"seed", 3}});
  EXPECT_EQ(LoadJudgments(dir.File("j.jsonl")), judgments);
  SaveJudgments(judgments, dir.File("plain.jsonl"));
  EXPECT_EQ(LoadJudgments(dir.File("plain.jsonl")), judgments);
}

TEST(JudgmentsFileTest, HeaderCarriesProvenance) {
  TempDir dir;
  SaveJudgments({}, dir.File("j.jsonl"), nlohmann::json{{"judge", "llm"}});
  std::ifstream in(dir.File("j.jsonl"));
  std::string line;
  std::getline(in, line);
  const auto header = nlohmann::json::parse(line);
  EXPECT_EQ(header["format"], kJudgmentsFormat);
  EXPECT_EQ(header["provenance"]["judge"], "llm");
  EXPECT_TRUE(LoadJudgments(dir.File("j.jsonl")).empty());
}

TEST(JudgmentsFileTest, BadLineRejectedWithLineNumber) {
  TempDir dir;
  const auto good = JudgmentToJson(testing::Beats("a", "b")).dump();
  auto bad = JudgmentToJson(testing::Beats("a", "b"));
  bad["verdict"] = "MAYBE";
  WriteText(dir.File("j.jsonl"), good + "\n" + good + "\n" + bad.dump() + "\n");
  const std::string error =
      ErrorOf([&] { LoadJudgments(dir.File("j.jsonl")); });
  EXPECT_NE(error.find("j.jsonl:3:"), std::string::npos) << error;
  EXPECT_NE(error.find("MAYBE"), std::string::npos) << error;

  WriteText(dir.File("k.jsonl"), good + "\n{oops\n");
  EXPECT_NE(ErrorOf([&] { LoadJudgments(dir.File("k.jsonl")); })
                .find("k.jsonl:2:"),
            std::string::npos);

  WriteText(dir.File("h.jsonl"),
            good + "\n{\"format\": \"pairrank-judgments/1\"}\n");
  EXPECT_NE(ErrorOf([&] { LoadJudgments(dir.File("h.jsonl")); })
                .find("header line must come first"),
            std::string::npos);

  auto self = JudgmentToJson(testing::Beats("a", "b"));
  self["second"] = "a";
  WriteText(dir.File("s.jsonl"), self.dump() + "\n");
  EXPECT_THROW(LoadJudgments(dir.File("s.jsonl")), ValidationError);
}

TEST(ScoresFileTest, RoundTripIsExact) {
  TempDir dir;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  ScoresFile s;
  s.method = "bt";
  s.feature_id = "sweetness";
  s.config = {{"epochs", 500}, {"learning_rate", 0.1}};
  for (int i = 0; i < 50; ++i) {
    s.scores.entity_index.push_back("e" + std::to_string(i));
    s.scores.weights.push_back(u(rng));
  }
  s.scores.weights[3] = 0.0;
  s.uncompared = {"e3"};
  SaveScores(s, dir.File("s.json"));
  const ScoresFile t = LoadScores(dir.File("s.json"));
  EXPECT_EQ(t.method, s.method);
  EXPECT_EQ(t.feature_id, s.feature_id);
  EXPECT_EQ(t.config, s.config);
  EXPECT_EQ(t.scores.entity_index, s.scores.entity_index);
  EXPECT_EQ(t.scores.weights, s.scores.weights);
  EXPECT_EQ(t.uncompared, s.uncompared);
}

TEST(ScoresFileTest, Rejections) {
  nlohmann::json doc = {{"format", kScoresFormat},
                        {"method", "count"},
                        {"feature_id", "f"},
                        {"scores", {{{"id", "a"}, {"weight", 1.0}},
                                    {{"id", "a"}, {"weight", 0.0}}}}};
  EXPECT_THROW(ScoresFromJson(doc), ValidationError);
  doc["scores"][1]["id"] = "b";
  EXPECT_NO_THROW(ScoresFromJson(doc));
  doc["scores"][1]["weight"] = "high";
  EXPECT_THROW(ScoresFromJson(doc), ValidationError);
  doc["format"] = kDatasetFormat;
  EXPECT_THROW(ScoresFromJson(doc), ValidationError);
}

TEST(FileTest, AtomicWriteReplaces) {
  TempDir dir;
  WriteFileAtomically(dir.File("x.txt"), "one");
  WriteFileAtomically(dir.File("x.txt"), "two");
  EXPECT_EQ(ReadFile(dir.File("x.txt")), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry :
       std::filesystem::directory_iterator(dir.path())) {
    ++files;
  }
  EXPECT_EQ(files, 1u);
}

}  // namespace
}  // namespace pairrank
