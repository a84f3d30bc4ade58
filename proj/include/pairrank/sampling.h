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

#ifndef PAIRRANK_SAMPLING_H_
#define PAIRRANK_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pairrank/domain.h"

namespace pairrank {

// Indices into the entity list the pair was sampled from. The order is the
// direction the question will be asked in.
struct EntityPair {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const EntityPair&, const EntityPair&) = default;
};

// Uniform sample of distinct unordered pairs, without replacement. With
// `gt`, entities lacking a value and pairs tied in ground truth are dropped
// from the pool first. Returns the whole pool when it holds fewer than
// `count` pairs. Pair direction is a seeded coin flip.
std::vector<EntityPair> SampleRandomPairs(std::span<const Entity> entities,
                                          std::size_t count,
                                          std::uint64_t seed,
                                          const GroundTruthRanking* gt =
                                              nullptr);

// Visits entities in a seeded random order and gives each one fresh
// uniformly drawn partners until it takes part in at least min(k, n - 1)
// pairs. Pairs created for earlier entities count toward both endpoints.
std::vector<EntityPair> SampleKPerEntity(std::span<const Entity> entities,
                                         std::size_t k, std::uint64_t seed);

// All n(n-1)/2 pairs, (0,1), (0,2), ..., (n-2,n-1).
std::vector<EntityPair> ExhaustivePairs(std::span<const Entity> entities);

// Number of pairs each entity takes part in.
std::vector<std::size_t> PairDegrees(std::span<const EntityPair> pairs,
                                     std::size_t n);

}  // namespace pairrank

#endif  // PAIRRANK_SAMPLING_H_
