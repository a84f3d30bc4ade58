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

#include <ctime>
#include <iostream>

#include "json.hpp"
#include "pairrank/ingestion.h"
#include "pairrank/judges.h"

namespace pairrank {

using json = nlohmann::json;

namespace {

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

CachedJudge::CachedJudge(std::shared_ptr<Judge> inner,
                         std::filesystem::path store)
    : inner_(std::move(inner)), store_(std::move(store)) {
  Load();
  out_.open(store_, std::ios::app);
  if (!out_) {
    throw ValidationError("cache " + store_.string() + " is not writable");
  }
}

void CachedJudge::Load() {
  std::ifstream in(store_);
  if (!in) return;  // fresh cache
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json record = json::parse(line);
      if (!record.contains("key") || !record["key"].is_string()) {
        throw ValidationError("missing key");
      }
      entries_.insert_or_assign(record["key"].get<std::string>(),
                                JudgmentFromJson(record));
    } catch (const std::exception& e) {
      std::cerr << "warning: " << store_.string() << ":" << line_no
                << ": ignoring corrupt cache record (" << e.what() << ")\n";
    }
  }
}

std::string CachedJudge::KeyFor(const JudgeQuery& query) const {
  return json::array({inner_->Identity(), query.feature.id, query.first.id,
                      query.second.id})
      .dump();
}

PairwiseJudgment CachedJudge::Evaluate(const JudgeQuery& query) {
  const std::string key = KeyFor(query);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;
  PairwiseJudgment judgment = inner_->Evaluate(query);

  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, judgment);
  if (!inserted) return it->second;  // a concurrent caller got there first
  json record = JudgmentToJson(judgment);
  record["key"] = key;
  record["timestamp"] = UtcTimestamp();
  out_ << record.dump() << '\n';
  out_.flush();
  return judgment;
}

std::size_t CachedJudge::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::size_t CachedJudge::hits() const { return hits_; }
std::size_t CachedJudge::misses() const { return misses_; }

}  // namespace pairrank
