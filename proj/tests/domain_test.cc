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

#include "pairrank/domain.h"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace pairrank {
namespace {

using ::pairrank::testing::Beats;
using ::pairrank::testing::MakeEntities;
using ::pairrank::testing::RandomJudgments;

const std::vector<Entity> kAbc = {{"a", "A"}, {"b", "B"}, {"c", "C"}};

TEST(BuildComparisonSetTest, EmptyInputGivesZeroMatrices) {
  const std::vector<Entity> ab = {{"a", "A"}, {"b", "B"}};
  const ComparisonSet cs = BuildComparisonSet({}, ab);
  EXPECT_EQ(cs.entity_index, (std::vector<std::string>{"a", "b"}));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(cs.compared(i, j), 0);
      EXPECT_EQ(cs.outcomes(i, j), 0);
    }
  }
}

TEST(BuildComparisonSetTest, SingleJudgment) {
  const std::vector<PairwiseJudgment> js = {Beats("a", "b")};
  const ComparisonSet cs = BuildComparisonSet(js, kAbc);
  EXPECT_EQ(cs.compared(0, 1), 1);
  EXPECT_EQ(cs.compared(1, 0), 1);
  EXPECT_EQ(cs.outcomes(0, 1), 1);
  EXPECT_EQ(cs.outcomes(1, 0), -1);
  EXPECT_EQ(cs.compared(0, 2), 0);
}

TEST(BuildComparisonSetTest, RepeatsAndContradictionsAreCounted) {
  const std::vector<PairwiseJudgment> js = {Beats("a", "b"), Beats("b", "a"),
                                            Beats("a", "b")};
  const ComparisonSet cs = BuildComparisonSet(js, kAbc);
  EXPECT_EQ(cs.compared(0, 1), 3);
  EXPECT_EQ(cs.outcomes(0, 1), 1);
  EXPECT_EQ(cs.outcomes(1, 0), -1);
}

TEST(BuildComparisonSetTest, SecondGreaterVerdictCountsForSecond) {
  PairwiseJudgment j = Beats("a", "b");
  j.verdict = Verdict::kSecondGreater;
  const ComparisonSet cs = BuildComparisonSet({&j, 1}, kAbc);
  EXPECT_EQ(cs.outcomes(1, 0), 1);
}

TEST(BuildComparisonSetTest, RejectsUnknownEntityByName) {
  const std::vector<PairwiseJudgment> js = {Beats("a", "zebra")};
  try {
    BuildComparisonSet(js, kAbc);
    FAIL() << "expected rejection";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zebra"), std::string::npos);
  }
}

TEST(BuildComparisonSetTest, RejectsMixedFeatures) {
  const std::vector<PairwiseJudgment> js = {Beats("a", "b", "size"),
                                            Beats("b", "c", "weight")};
  EXPECT_THROW(BuildComparisonSet(js, kAbc), ValidationError);
}

TEST(BuildComparisonSetTest, InvariantsOnRandomInput) {
  std::mt19937_64 rng(11);
  const auto entities = MakeEntities(7);
  const auto js = RandomJudgments(entities, 60, rng);
  const ComparisonSet cs = BuildComparisonSet(js, entities);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(cs.compared(i, i), 0);
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(cs.compared(i, j), cs.compared(j, i));
      EXPECT_GE(cs.compared(i, j), 0);
      EXPECT_EQ(cs.outcomes(i, j), -cs.outcomes(j, i));
      EXPECT_LE(std::abs(cs.outcomes(i, j)), cs.compared(i, j));
    }
  }
}

TEST(BuildComparisonSetTest, JudgmentOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  const auto entities = MakeEntities(6);
  auto js = RandomJudgments(entities, 40, rng);
  const ComparisonSet reference = BuildComparisonSet(js, entities);
  for (int round = 0; round < 20; ++round) {
    StableShuffle(js.begin(), js.end(), rng);
    const ComparisonSet shuffled = BuildComparisonSet(js, entities);
    EXPECT_EQ(shuffled.compared, reference.compared);
    EXPECT_EQ(shuffled.outcomes, reference.outcomes);
  }
}

TEST(BuildComparisonSetTest, PermutingEntitiesPermutesMatrices) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + UniformIndex(rng, 9);
    const auto entities = MakeEntities(n);
    const auto js = RandomJudgments(entities, 3 * n, rng);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    StableShuffle(perm.begin(), perm.end(), rng);
    std::vector<Entity> permuted;
    for (std::size_t i : perm) permuted.push_back(entities[i]);

    const ComparisonSet a = BuildComparisonSet(js, entities);
    const ComparisonSet b = BuildComparisonSet(js, permuted);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(b.compared(i, j), a.compared(perm[i], perm[j]));
        EXPECT_EQ(b.outcomes(i, j), a.outcomes(perm[i], perm[j]));
      }
    }
  }
}

ScoreVector Scores(std::vector<std::string> ids, std::vector<double> w) {
  return {std::move(ids), std::move(w)};
}

TEST(RankingFromScoresTest, StrictOrder) {
  const Ranking r = RankingFromScores(Scores({"a", "b", "c"}, {1.0, 0.0, -1.0}));
  ASSERT_EQ(r.ordered.size(), 3u);
  EXPECT_EQ(r.ordered[0], std::vector<std::string>{"a"});
  EXPECT_EQ(r.ordered[2], std::vector<std::string>{"c"});
  EXPECT_EQ(r.positions.at("a"), 1.0);
  EXPECT_EQ(r.positions.at("b"), 2.0);
  EXPECT_EQ(r.positions.at("c"), 3.0);
}

TEST(RankingFromScoresTest, SymmetricTie) {
  const Ranking r = RankingFromScores(Scores({"b", "a", "c"}, {0.5, 0.5, 0.1}));
  ASSERT_EQ(r.ordered.size(), 2u);
  EXPECT_EQ(r.ordered[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(r.positions.at("a"), 1.5);
  EXPECT_EQ(r.positions.at("b"), 1.5);
  EXPECT_EQ(r.positions.at("c"), 3.0);
}

TEST(RankingFromScoresTest, AllEqualIsOneGroup) {
  const Ranking r =
      RankingFromScores(Scores({"a", "b", "c", "d"}, {2.0, 2.0, 2.0, 2.0}));
  ASSERT_EQ(r.ordered.size(), 1u);
  for (const auto& [id, pos] : r.positions) EXPECT_EQ(pos, 2.5);
}

TEST(RankingFromScoresTest, RejectsNonFiniteWeight) {
  EXPECT_THROW(RankingFromScores(Scores(
                   {"a", "b"}, {1.0, std::numeric_limits<double>::quiet_NaN()})),
               ValidationError);
  EXPECT_THROW(RankingFromScores(Scores(
                   {"a", "b"}, {std::numeric_limits<double>::infinity(), 0})),
               ValidationError);
}

TEST(RankingFromScoresTest, RejectsLengthMismatch) {
  EXPECT_THROW(RankingFromScores(Scores({"a", "b"}, {1.0})), ValidationError);
}

TEST(RankingFromScoresTest, TranslationInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> level(0, 4);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> ids;
    std::vector<double> w;
    for (int i = 0; i < 8; ++i) {
      ids.push_back("e" + std::to_string(i));
      w.push_back(0.25 * level(rng));  // exact binary fractions keep ties
    }
    std::vector<double> shifted = w;
    for (double& v : shifted) v += 4.0;
    const Ranking a = RankingFromScores(Scores(ids, w));
    const Ranking b = RankingFromScores(Scores(ids, shifted));
    EXPECT_EQ(a.ordered, b.ordered);
    EXPECT_EQ(a.positions, b.positions);
  }
}

TEST(RankingFromScoresTest, PositionsMatchGroups) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> level(0, 3);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> ids;
    std::vector<double> w;
    for (int i = 0; i < 9; ++i) {
      ids.push_back("e" + std::to_string(i));
      w.push_back(level(rng));
    }
    const Ranking r = RankingFromScores(Scores(ids, w));
    std::size_t seen = 0;
    for (const auto& group : r.ordered) {
      const double expected =
          (static_cast<double>(seen + 1) + static_cast<double>(seen + group.size())) / 2;
      for (const auto& id : group) EXPECT_EQ(r.positions.at(id), expected);
      seen += group.size();
    }
    EXPECT_EQ(seen, 9u);
  }
}

TEST(GroundTruthVerdictTest, Directions) {
  GroundTruthRanking gt{testing::TestFeature(), {{"a", 3.0}, {"b", 1.0}, {"c", 1.0}}};
  EXPECT_EQ(GroundTruthVerdict(gt, "a", "b"), Verdict::kFirstGreater);
  EXPECT_EQ(GroundTruthVerdict(gt, "b", "a"), Verdict::kSecondGreater);
  EXPECT_EQ(GroundTruthVerdict(gt, "b", "c"), std::nullopt);
  gt.feature.higher_is_more = false;
  EXPECT_EQ(GroundTruthVerdict(gt, "a", "b"), Verdict::kSecondGreater);
}

TEST(GroundTruthVerdictTest, MissingIdIsRejected) {
  const GroundTruthRanking gt{testing::TestFeature(), {{"a", 3.0}, {"b", 1.0}}};
  EXPECT_THROW(GroundTruthVerdict(gt, "a", "q"), ValidationError);
}

TEST(GroundTruthRankingTest, ValidationChecksMembershipAndSize) {
  GroundTruthRanking gt{testing::TestFeature(), {{"a", 1.0}, {"zzz", 2.0}}};
  EXPECT_THROW(ValidateGroundTruth(gt, kAbc), ValidationError);
  gt.values = {{"a", 1.0}};
  EXPECT_THROW(ValidateGroundTruth(gt, kAbc), ValidationError);
  gt.values = {{"a", 1.0}, {"b", 2.0}};
  EXPECT_NO_THROW(ValidateGroundTruth(gt, kAbc));
}

TEST(ValidationTest, FeatureAuxiliaryRestricted) {
  FeatureSpec f = testing::TestFeature();
  EXPECT_NO_THROW(ValidateFeature(f));
  f.auxiliary = "Can";
  EXPECT_THROW(ValidateFeature(f), ValidationError);
  f = testing::TestFeature();
  f.comparative.clear();
  EXPECT_THROW(ValidateFeature(f), ValidationError);
}

TEST(ValidationTest, EntitiesUniqueAndNamed) {
  EXPECT_THROW(ValidateEntities(std::vector<Entity>{{"a", "A"}, {"a", "B"}}),
               ValidationError);
  EXPECT_THROW(ValidateEntities(std::vector<Entity>{{"a", ""}}),
               ValidationError);
}

TEST(ValidationTest, JudgmentInvariants) {
  PairwiseJudgment self = Beats("a", "a");
  EXPECT_THROW(ValidateJudgment(self), ValidationError);
  PairwiseJudgment fallback = Beats("a", "b");
  fallback.source = JudgmentSource::kFallbackRandom;
  EXPECT_THROW(ValidateJudgment(fallback), ValidationError);
  fallback.raw_response = "I cannot say";
  EXPECT_NO_THROW(ValidateJudgment(fallback));
}

TEST(NamesTest, RoundTrip) {
  for (Verdict v : {Verdict::kFirstGreater, Verdict::kSecondGreater}) {
    EXPECT_EQ(ParseVerdict(VerdictName(v)), v);
  }
  for (JudgmentSource s :
       {JudgmentSource::kGroundTruth, JudgmentSource::kSimulated,
        JudgmentSource::kLlm, JudgmentSource::kFallbackRandom}) {
    EXPECT_EQ(ParseSource(SourceName(s)), s);
  }
  EXPECT_THROW(ParseVerdict("BIGGER"), ValidationError);
}

}  // namespace
}  // namespace pairrank
