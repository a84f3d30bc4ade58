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

#include <cstdio>
#include <cstdlib>
#include <regex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "pairrank/hashing.h"
#include "pairrank/judges.h"

namespace pairrank {

using json = nlohmann::json;

std::string BuildChatRequest(const LlmJudgeConfig& config,
                             const std::string& prompt) {
  json body = {
      {"model", config.model_name},
      {"temperature", config.temperature},
      {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  return body.dump();
}

std::string ExtractChatReply(std::string_view body) {
  const json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    throw std::runtime_error("response body is not JSON");
  }
  const json* content = nullptr;
  if (parsed.contains("choices") && parsed["choices"].is_array() &&
      !parsed["choices"].empty()) {
    const json& choice = parsed["choices"][0];
    if (choice.is_object() && choice.contains("message") &&
        choice["message"].is_object() &&
        choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    throw std::runtime_error(
        "response body lacks choices[0].message.content");
  }
  return content->get<std::string>();
}

LlmJudge::LlmJudge(LlmJudgeConfig config) : config_(std::move(config)) {
  if (config_.max_retries < 0) {
    throw ValidationError("max_retries must be non-negative");
  }
  if (!(config_.temperature >= 0.0)) {
    throw ValidationError("temperature must be non-negative");
  }
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch match;
  if (!std::regex_match(config_.endpoint_url, match, kUrl)) {
    throw ValidationError("endpoint URL '" + config_.endpoint_url +
                          "' is not an http(s) URL");
  }
  scheme_host_port_ = match[1];
  path_ = match[2].matched ? std::string(match[2]) : "/";
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("PAIRRANK_API_KEY")) {
      config_.api_key = key;
    }
  }
}

std::string LlmJudge::Identity() const {
  char temperature[32];
  std::snprintf(temperature, sizeof(temperature), "%.17g",
                config_.temperature);
  return "llm/1 endpoint=" + config_.endpoint_url +
         " model=" + config_.model_name + " temperature=" + temperature +
         " mode=" + std::string(PromptModeName(config_.mode)) +
         " fallback_seed=" + std::to_string(config_.fallback_seed);
}

std::string LlmJudge::Post(const JudgeQuery& query,
                           const std::string& body) const {
  std::chrono::milliseconds backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(scheme_host_port_);
    const auto seconds =
        std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + config_.api_key);
    }
    auto result = client.Post(path_, headers, body, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      last_error = "HTTP status " + std::to_string(result->status);
      continue;
    }
    return result->body;
  }
  throw RemoteJudgeError("judge request for (" + query.first.id + ", " +
                             query.second.id + ") failed after " +
                             std::to_string(config_.max_retries + 1) +
                             " attempts: " + last_error,
                         query);
}

PairwiseJudgment LlmJudge::Interpret(const JudgeQuery& query,
                                     const std::string& reply) const {
  PairwiseJudgment judgment;
  judgment.feature_id = query.feature.id;
  judgment.first = query.first.id;
  judgment.second = query.second.id;
  judgment.raw_response = reply;
  if (const auto yes = ParseYesNo(reply)) {
    judgment.verdict = *yes ? Verdict::kFirstGreater : Verdict::kSecondGreater;
    judgment.source = JudgmentSource::kLlm;
    return judgment;
  }
  // Keyed per query so the label does not depend on call order.
  const std::uint64_t h =
      KeyedHash(config_.fallback_seed,
                {"fallback", query.feature.id, query.first.id,
                 query.second.id});
  judgment.verdict = ToUnitInterval(h) < 0.5 ? Verdict::kFirstGreater
                                             : Verdict::kSecondGreater;
  judgment.source = JudgmentSource::kFallbackRandom;
  return judgment;
}

PairwiseJudgment LlmJudge::Evaluate(const JudgeQuery& query) {
  const std::string prompt = RenderJudgePrompt(query, config_.mode);
  const std::string body = Post(query, BuildChatRequest(config_, prompt));
  std::string reply;
  try {
    reply = ExtractChatReply(body);
  } catch (const std::runtime_error& e) {
    throw RemoteJudgeError("judge reply for (" + query.first.id + ", " +
                               query.second.id + ") unusable: " + e.what(),
                           query);
  }
  return Interpret(query, reply);
}

}  // namespace pairrank
