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
#include <set>

#include <gtest/gtest.h>

#include "test_util.h"

namespace pairrank {
namespace {

using ::pairrank::testing::MakeEntities;
using ::pairrank::testing::TestFeature;

std::set<std::pair<std::size_t, std::size_t>> Unordered(
    const std::vector<EntityPair>& pairs) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const EntityPair& p : pairs) {
    out.insert(std::minmax(p.first, p.second));
  }
  return out;
}

void ExpectWellFormed(const std::vector<EntityPair>& pairs, std::size_t n) {
  for (const EntityPair& p : pairs) {
    EXPECT_NE(p.first, p.second);
    EXPECT_LT(p.first, n);
    EXPECT_LT(p.second, n);
  }
  EXPECT_EQ(Unordered(pairs).size(), pairs.size()) << "duplicate pair";
}

TEST(SampleRandomPairsTest, DrawsRequestedCountWithoutRepeats) {
  const auto entities = MakeEntities(35);  // 595 pairs
  const auto pairs = SampleRandomPairs(entities, 500, 11);
  EXPECT_EQ(pairs.size(), 500u);
  ExpectWellFormed(pairs, entities.size());
}

TEST(SampleRandomPairsTest, SmallPoolIsReturnedWhole) {
  const auto entities = MakeEntities(10);
  const auto pairs = SampleRandomPairs(entities, 500, 3);
  EXPECT_EQ(pairs.size(), 45u);
  ExpectWellFormed(pairs, entities.size());
}

TEST(SampleRandomPairsTest, SeedDeterminism) {
  const auto entities = MakeEntities(40);
  EXPECT_EQ(SampleRandomPairs(entities, 100, 5),
            SampleRandomPairs(entities, 100, 5));
  EXPECT_NE(SampleRandomPairs(entities, 100, 5),
            SampleRandomPairs(entities, 100, 6));
}

TEST(SampleRandomPairsTest, BothDirectionsOccur) {
  const auto entities = MakeEntities(40);
  int forward = 0;
  const auto pairs = SampleRandomPairs(entities, 400, 8);
  for (const EntityPair& p : pairs) forward += p.first < p.second;
  EXPECT_GT(forward, 150);
  EXPECT_LT(forward, 250);
}

TEST(SampleRandomPairsTest, RoughlyUniformOverPairs) {
  // 6 entities, 15 pairs, draw 5 per trial: each pair appears with
  // probability 1/3.
  const auto entities = MakeEntities(6);
  std::map<std::pair<std::size_t, std::size_t>, int> hits;
  const int trials = 6000;
  for (int t = 0; t < trials; ++t) {
    for (const auto& p : Unordered(SampleRandomPairs(entities, 5, t))) {
      ++hits[p];
    }
  }
  ASSERT_EQ(hits.size(), 15u);
  for (const auto& [pair, count] : hits) {
    EXPECT_NEAR(static_cast<double>(count) / trials, 1.0 / 3.0, 0.03);
  }
}

TEST(SampleRandomPairsTest, GroundTruthFiltersTiesAndMissing) {
  const auto entities = MakeEntities(5);
  GroundTruthRanking gt{TestFeature(),
                        {{"e0", 1}, {"e1", 1}, {"e2", 2}, {"e3", 3}}};
  // e4 has no value; (e0, e1) is tied. Pool: 6 - 1 = 5 pairs.
  const auto pairs = SampleRandomPairs(entities, 100, 1, &gt);
  EXPECT_EQ(pairs.size(), 5u);
  for (const EntityPair& p : pairs) {
    EXPECT_NE(p.first, 4u);
    EXPECT_NE(p.second, 4u);
    EXPECT_FALSE(std::min(p.first, p.second) == 0 &&
                 std::max(p.first, p.second) == 1);
  }
}

TEST(SampleRandomPairsTest, Degenerate) {
  EXPECT_THROW(SampleRandomPairs(MakeEntities(1), 3, 0), ValidationError);
  EXPECT_THROW(SampleRandomPairs(MakeEntities(4), 0, 0), ValidationError);
}

TEST(SampleKPerEntityTest, DegreeGuarantee) {
  for (std::size_t n : {2u, 3u, 7u, 30u, 100u}) {
    for (std::size_t k : {1u, 5u, 30u}) {
      const auto entities = MakeEntities(n);
      const auto pairs = SampleKPerEntity(entities, k, n * 31 + k);
      ExpectWellFormed(pairs, n);
      const auto degrees = PairDegrees(pairs, n);
      const std::size_t quota = std::min(k, n - 1);
      for (std::size_t d : degrees) EXPECT_GE(d, quota) << n << " " << k;
      EXPECT_LE(pairs.size(), n * k);
      EXPECT_GE(pairs.size(), (n * quota + 1) / 2);
    }
  }
}

TEST(SampleKPerEntityTest, HundredEntitiesFiveEach) {
  const auto entities = MakeEntities(100);
  const auto pairs = SampleKPerEntity(entities, 5, 42);
  EXPECT_LE(pairs.size(), 500u);
  const auto degrees = PairDegrees(pairs, 100);
  EXPECT_GE(*std::min_element(degrees.begin(), degrees.end()), 5u);
}

TEST(SampleKPerEntityTest, Saturation) {
  EXPECT_EQ(SampleKPerEntity(MakeEntities(5), 30, 1).size(), 10u);
  EXPECT_EQ(SampleKPerEntity(MakeEntities(2), 1, 1).size(), 1u);
}

TEST(SampleKPerEntityTest, LargeKIsExhaustive) {
  const auto entities = MakeEntities(9);
  EXPECT_EQ(SampleKPerEntity(entities, 50, 2).size(), 36u);
}

TEST(SampleKPerEntityTest, SeedDeterminism) {
  const auto entities = MakeEntities(50);
  EXPECT_EQ(SampleKPerEntity(entities, 5, 9), SampleKPerEntity(entities, 5, 9));
  EXPECT_NE(SampleKPerEntity(entities, 5, 9),
            SampleKPerEntity(entities, 5, 10));
}

TEST(ExhaustivePairsTest, CountsAndOrder) {
  EXPECT_EQ(ExhaustivePairs(MakeEntities(30)).size(), 435u);
  EXPECT_EQ(ExhaustivePairs(MakeEntities(16)).size(), 120u);
  EXPECT_THROW(ExhaustivePairs(MakeEntities(1)), ValidationError);
  const auto pairs = ExhaustivePairs(MakeEntities(4));
  const std::vector<EntityPair> expected = {{0, 1}, {0, 2}, {0, 3},
                                            {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(pairs, expected);
}

TEST(PairDegreesTest, Counts) {
  const std::vector<EntityPair> pairs = {{0, 1}, {2, 0}, {1, 2}, {3, 0}};
  EXPECT_EQ(PairDegrees(pairs, 5), (std::vector<std::size_t>{3, 2, 2, 1, 0}));
}

}  // namespace
}  // namespace pairrank
