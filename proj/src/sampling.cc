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

#include "pairrank/sampling.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "pairrank/hashing.h"

namespace pairrank {
namespace {

void RequireTwo(std::span<const Entity> entities) {
  if (entities.size() < 2) {
    throw ValidationError("pair sampling needs at least two entities");
  }
}

EntityPair Oriented(std::size_t a, std::size_t b, std::mt19937_64& rng) {
  return CoinFlip(rng) ? EntityPair{a, b} : EntityPair{b, a};
}

}  // namespace

std::vector<EntityPair> SampleRandomPairs(std::span<const Entity> entities,
                                          std::size_t count,
                                          std::uint64_t seed,
                                          const GroundTruthRanking* gt) {
  RequireTwo(entities);
  if (count < 1) throw ValidationError("pair count must be at least 1");

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (gt == nullptr || gt->Contains(entities[i].id)) usable.push_back(i);
  }
  std::vector<EntityPair> pool;
  for (std::size_t a = 0; a < usable.size(); ++a) {
    for (std::size_t b = a + 1; b < usable.size(); ++b) {
      const std::size_t i = usable[a];
      const std::size_t j = usable[b];
      if (gt != nullptr &&
          !GroundTruthVerdict(*gt, entities[i].id, entities[j].id)) {
        continue;
      }
      pool.push_back({i, j});
    }
  }
  if (pool.empty()) {
    throw ValidationError(
        "fewer than two entities with distinct ground-truth values");
  }

  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(count, pool.size());
  // Partial Fisher-Yates: the first `take` slots become the sample.
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + UniformIndex(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<EntityPair> sample;
  sample.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    sample.push_back(Oriented(pool[i].first, pool[i].second, rng));
  }
  return sample;
}

std::vector<EntityPair> SampleKPerEntity(std::span<const Entity> entities,
                                         std::size_t k, std::uint64_t seed) {
  RequireTwo(entities);
  if (k < 1) throw ValidationError("k must be at least 1");
  const std::size_t n = entities.size();
  const std::size_t quota = std::min(k, n - 1);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  StableShuffle(order.begin(), order.end(), rng);

  std::vector<bool> paired(n * n, false);
  std::vector<std::size_t> degree(n, 0);
  std::vector<EntityPair> pairs;
  std::vector<std::size_t> partners;
  for (std::size_t e : order) {
    if (degree[e] >= quota) continue;
    partners.clear();
    for (std::size_t p = 0; p < n; ++p) {
      if (p != e && !paired[e * n + p]) partners.push_back(p);
    }
    StableShuffle(partners.begin(), partners.end(), rng);
    for (std::size_t p : partners) {
      if (degree[e] >= quota) break;
      paired[e * n + p] = paired[p * n + e] = true;
      ++degree[e];
      ++degree[p];
      pairs.push_back(Oriented(e, p, rng));
    }
  }
  return pairs;
}

std::vector<EntityPair> ExhaustivePairs(std::span<const Entity> entities) {
  RequireTwo(entities);
  std::vector<EntityPair> pairs;
  pairs.reserve(entities.size() * (entities.size() - 1) / 2);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    for (std::size_t j = i + 1; j < entities.size(); ++j) {
      pairs.push_back({i, j});
    }
  }
  return pairs;
}

std::vector<std::size_t> PairDegrees(std::span<const EntityPair> pairs,
                                     std::size_t n) {
  std::vector<std::size_t> degree(n, 0);
  for (const EntityPair& p : pairs) {
    ++degree.at(p.first);
    ++degree.at(p.second);
  }
  return degree;
}

}  // namespace pairrank
