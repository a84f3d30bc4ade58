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

#include <cctype>
#include <cmath>
#include <cstdio>

#include "pairrank/hashing.h"
#include "pairrank/judges.h"

namespace pairrank {

namespace {

// Temporal phrases such as "founded after" already relate the two entities
// and take no "than".
const char* Connector(std::string_view comparative) {
  static constexpr std::string_view kRelational[] = {"after", "before",
                                                     "than"};
  const std::size_t space = comparative.rfind(' ');
  const std::string_view last = space == std::string_view::npos
                                    ? comparative
                                    : comparative.substr(space + 1);
  for (std::string_view word : kRelational) {
    if (last == word) return " ";
  }
  return " than ";
}

}  // namespace

std::string RenderPairwisePrompt(const JudgeQuery& query) {
  ValidateFeature(query.feature);
  if (query.first.id == query.second.id) {
    throw ValidationError("query compares '" + query.first.id +
                          "' with itself");
  }
  return "This question is about two " + query.feature.entity_type + ": " +
         query.feature.auxiliary + " " + query.first.name + " " +
         query.feature.comparative + Connector(query.feature.comparative) +
         query.second.name + "?";
}

std::string RenderPointwisePrompt(const FeatureSpec& feature,
                                  const Entity& entity) {
  if (feature.superlative.empty()) {
    throw ValidationError("feature '" + feature.id +
                          "' has no superlative phrase");
  }
  if (feature.entity_type.empty()) {
    throw ValidationError("feature '" + feature.id + "' has no entity type");
  }
  return "Is " + entity.name + " among " + feature.superlative + " " +
         feature.entity_type + "?";
}

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string HexDigest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

SimulatedJudge::SimulatedJudge(SimulatedJudgeConfig config)
    : config_(std::move(config)) {
  if (!(config_.flip_probability >= 0.0 && config_.flip_probability <= 1.0)) {
    throw ValidationError("flip probability must lie in [0, 1]");
  }
  if (config_.difficulty_scale && !(*config_.difficulty_scale > 0.0)) {
    throw ValidationError("difficulty scale must be positive");
  }
  std::uint64_t gt_hash = KeyedHash(0, {config_.ground_truth.feature.id});
  for (const auto& [id, value] : config_.ground_truth.values) {
    const std::string formatted = FormatDouble(value);
    gt_hash = KeyedHash(gt_hash, {id, formatted});
  }
  identity_ = "simulated/1 seed=" + std::to_string(config_.seed) +
              " flip=" + FormatDouble(config_.flip_probability) +
              " gt=" + HexDigest(gt_hash);
  if (config_.difficulty_scale) {
    identity_ += " difficulty=" + FormatDouble(*config_.difficulty_scale);
  }
}

double SimulatedJudge::FlipProbability(std::string_view first,
                                       std::string_view second) const {
  if (!config_.difficulty_scale) return config_.flip_probability;
  const double gap = std::abs(config_.ground_truth.ValueOf(first) -
                              config_.ground_truth.ValueOf(second));
  return config_.flip_probability *
         std::exp(-gap / *config_.difficulty_scale);
}

PairwiseJudgment SimulatedJudge::Evaluate(const JudgeQuery& query) {
  const auto truth = GroundTruthVerdict(config_.ground_truth, query.first.id,
                                        query.second.id);
  if (!truth) {
    throw ValidationError("entities '" + query.first.id + "' and '" +
                          query.second.id +
                          "' are tied in ground truth; no verdict exists");
  }
  const double u = ToUnitInterval(KeyedHash(
      config_.seed, {query.feature.id, query.first.id, query.second.id}));
  const bool flip = u < FlipProbability(query.first.id, query.second.id);
  PairwiseJudgment judgment;
  judgment.feature_id = query.feature.id;
  judgment.first = query.first.id;
  judgment.second = query.second.id;
  judgment.verdict = flip ? Flip(*truth) : *truth;
  judgment.source = JudgmentSource::kSimulated;
  return judgment;
}

std::string SimulatedJudge::Identity() const { return identity_; }

std::string_view PromptModeName(PromptMode mode) {
  return mode == PromptMode::kZeroShot ? "zero-shot" : "few-shot";
}

PromptMode ParsePromptMode(std::string_view name) {
  if (name == "zero-shot") return PromptMode::kZeroShot;
  if (name == "few-shot") return PromptMode::kFewShot;
  throw ValidationError("unknown prompt mode '" + std::string(name) + "'");
}

const char kZeroShotInstruction[] = "Only answer with yes or no.";

const char kFewShotPreamble[] =
    "Answer the following with Yes or No only. In the worst case, if you do "
    "not know the answer then choose randomly between Yes and No.\n"
    "This question is about two rivers: Is Nile longer than Indus?\n"
    "Yes\n"
    "This question is about two countries: Is Japan more populated than "
    "India?\n"
    "No\n"
    "This question is about two countries: Is China larger than India?\n"
    "Yes\n";

std::string RenderJudgePrompt(const JudgeQuery& query, PromptMode mode) {
  const std::string question = RenderPairwisePrompt(query);
  if (mode == PromptMode::kFewShot) return kFewShotPreamble + question;
  return question + " " + kZeroShotInstruction;
}

std::optional<bool> ParseYesNo(std::string_view reply) {
  std::size_t start = 0;
  while (start < reply.size()) {
    const unsigned char c = reply[start];
    if (std::isspace(c) || std::ispunct(c)) {
      ++start;
    } else {
      break;
    }
  }
  std::string token;
  for (std::size_t i = start; i < reply.size(); ++i) {
    const unsigned char c = reply[i];
    if (!std::isalpha(c)) break;
    token.push_back(static_cast<char>(std::tolower(c)));
  }
  if (token == "yes") return true;
  if (token == "no") return false;
  return std::nullopt;
}

}  // namespace pairrank
