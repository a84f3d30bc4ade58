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

// Judges answer "is f(first) > f(second)?" for one feature. Three flavours:
// a seeded noisy oracle over ground truth, a remote chat-completion model,
// and a persistent cache that wraps either.

#ifndef PAIRRANK_JUDGES_H_
#define PAIRRANK_JUDGES_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pairrank/domain.h"

namespace pairrank {

struct JudgeQuery {
  FeatureSpec feature;
  Entity first;
  Entity second;
};

// "This question is about two {type}: {aux} {first} {comparative} than
// {second}?"  The "than" is dropped when the comparative already ends in
// "after", "before" or "than" (e.g. "Was Meta founded after Alphabet?").
std::string RenderPairwisePrompt(const JudgeQuery& query);

// "Is {entity} among {superlative} {type}?"
std::string RenderPointwisePrompt(const FeatureSpec& feature,
                                  const Entity& entity);

// Implementations must be safe to call concurrently.
class Judge {
 public:
  virtual ~Judge() = default;

  virtual PairwiseJudgment Evaluate(const JudgeQuery& query) = 0;

  // Stable description of everything that influences verdicts; used as the
  // cache namespace.
  virtual std::string Identity() const = 0;
};

struct SimulatedJudgeConfig {
  GroundTruthRanking ground_truth;
  double flip_probability = 0.0;
  std::uint64_t seed = 0;
  // When set, the flip probability for a pair becomes
  // flip_probability * exp(-|f(a) - f(b)| / difficulty_scale).
  std::optional<double> difficulty_scale;
};

class SimulatedJudge : public Judge {
 public:
  explicit SimulatedJudge(SimulatedJudgeConfig config);

  PairwiseJudgment Evaluate(const JudgeQuery& query) override;
  std::string Identity() const override;

  // Probability of flipping the true verdict on this pair.
  double FlipProbability(std::string_view first,
                         std::string_view second) const;

 private:
  SimulatedJudgeConfig config_;
  std::string identity_;
};

enum class PromptMode { kZeroShot, kFewShot };

std::string_view PromptModeName(PromptMode mode);
PromptMode ParsePromptMode(std::string_view name);

struct LlmJudgeConfig {
  std::string endpoint_url;  // e.g. http://host:port/v1/chat/completions
  std::string model_name;
  double temperature = 0.0;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  std::uint64_t fallback_seed = 0;
  PromptMode mode = PromptMode::kZeroShot;
  // First backoff delay; doubles after every failed attempt.
  std::chrono::milliseconds initial_backoff{1000};
  // Bearer token; when empty, read from PAIRRANK_API_KEY at construction.
  std::string api_key;
};

extern const char kZeroShotInstruction[];
extern const char kFewShotPreamble[];

// The full message sent to the remote model for `query`.
std::string RenderJudgePrompt(const JudgeQuery& query, PromptMode mode);

// Leading yes/no token after trimming whitespace and punctuation,
// case-insensitive. nullopt for anything else.
std::optional<bool> ParseYesNo(std::string_view reply);

// Request body in the chat-completion shape.
std::string BuildChatRequest(const LlmJudgeConfig& config,
                             const std::string& prompt);

// First choice's message content. Throws std::runtime_error on a body
// without that shape.
std::string ExtractChatReply(std::string_view body);

// Remote failure after all retries, or an unusable response body.
class RemoteJudgeError : public std::runtime_error {
 public:
  RemoteJudgeError(const std::string& what, JudgeQuery query)
      : std::runtime_error(what), query_(std::move(query)) {}
  const JudgeQuery& query() const { return query_; }

 private:
  JudgeQuery query_;
};

class LlmJudge : public Judge {
 public:
  explicit LlmJudge(LlmJudgeConfig config);

  PairwiseJudgment Evaluate(const JudgeQuery& query) override;
  std::string Identity() const override;

  // Turns a model reply into a judgment, applying the random-label
  // fallback for non-conforming replies.
  PairwiseJudgment Interpret(const JudgeQuery& query,
                             const std::string& reply) const;

 private:
  std::string Post(const JudgeQuery& query, const std::string& body) const;

  LlmJudgeConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// Persists judgments of `inner` in an append-only JSONL file keyed by
// (inner identity, feature, ordered pair). Reads are concurrent; writes are
// serialized.
class CachedJudge : public Judge {
 public:
  CachedJudge(std::shared_ptr<Judge> inner, std::filesystem::path store);

  PairwiseJudgment Evaluate(const JudgeQuery& query) override;
  std::string Identity() const override { return inner_->Identity(); }

  std::string KeyFor(const JudgeQuery& query) const;
  std::size_t size() const;
  std::size_t hits() const;
  std::size_t misses() const;

 private:
  void Load();

  std::shared_ptr<Judge> inner_;
  std::filesystem::path store_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, PairwiseJudgment> entries_;
  std::ofstream out_;
  std::atomic<std::size_t> hits_ = 0;
  std::atomic<std::size_t> misses_ = 0;
};

}  // namespace pairrank

#endif  // PAIRRANK_JUDGES_H_
