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

// Core data model: entities, ranked features, ground truth, pairwise
// judgments and the structures aggregators consume.

#ifndef PAIRRANK_DOMAIN_H_
#define PAIRRANK_DOMAIN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pairrank {

// Raised for any violated precondition or invariant on user-supplied data.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Entity {
  std::string id;
  std::string name;
};

// A rankable dimension together with the phrases used to ask about it.
struct FeatureSpec {
  std::string id;
  std::string entity_type;      // plural noun phrase, e.g. "rivers"
  std::string auxiliary = "Is"; // one of "Is", "Does", "Was"
  std::string comparative;      // e.g. "longer", "taste sweeter"
  std::string superlative;      // e.g. "the longest"; may be empty
  bool higher_is_more = true;
};

// Throws ValidationError when the feature's prompt phrases are unusable.
void ValidateFeature(const FeatureSpec& feature);

// Throws ValidationError on empty or duplicate ids and empty names.
void ValidateEntities(std::span<const Entity> entities);

struct GroundTruthRanking {
  FeatureSpec feature;
  std::map<std::string, double> values;  // entity id -> f(e)

  bool Contains(std::string_view id) const;
  double ValueOf(std::string_view id) const;
};

// Checks that every valued id exists among `entities` and that at least two
// values are present.
void ValidateGroundTruth(const GroundTruthRanking& gt,
                         std::span<const Entity> entities);

enum class Verdict { kFirstGreater, kSecondGreater };
enum class JudgmentSource { kGroundTruth, kSimulated, kLlm, kFallbackRandom };

std::string_view VerdictName(Verdict verdict);
std::string_view SourceName(JudgmentSource source);
Verdict ParseVerdict(std::string_view name);
JudgmentSource ParseSource(std::string_view name);

inline Verdict Flip(Verdict verdict) {
  return verdict == Verdict::kFirstGreater ? Verdict::kSecondGreater
                                           : Verdict::kFirstGreater;
}

// One directed verdict on "f(first) > f(second)".
struct PairwiseJudgment {
  std::string feature_id;
  std::string first;
  std::string second;
  Verdict verdict = Verdict::kFirstGreater;
  JudgmentSource source = JudgmentSource::kSimulated;
  std::optional<std::string> raw_response;

  const std::string& Winner() const {
    return verdict == Verdict::kFirstGreater ? first : second;
  }
  const std::string& Loser() const {
    return verdict == Verdict::kFirstGreater ? second : first;
  }

  friend bool operator==(const PairwiseJudgment&,
                         const PairwiseJudgment&) = default;
};

void ValidateJudgment(const PairwiseJudgment& judgment);

// Dense n x n square matrix in row-major order.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

// Comparison counts s_ij and net outcomes o_ij over a fixed entity order.
//   s_ij = number of judgments on {i, j}, either direction.
//   o_ij = #(i beat j) - #(j beat i).
struct ComparisonSet {
  std::vector<std::string> entity_index;
  SquareMatrix<int> compared;
  SquareMatrix<int> outcomes;
};

ComparisonSet BuildComparisonSet(std::span<const PairwiseJudgment> judgments,
                                 std::span<const Entity> entities);

struct DifferenceExample {
  std::size_t winner_index = 0;
  std::size_t loser_index = 0;
};

// Maps entity ids to their position in `entities`.
std::unordered_map<std::string, std::size_t> IndexEntities(
    std::span<const Entity> entities);

// One example per judgment. Throws on ids absent from `entities`.
std::vector<DifferenceExample> ToDifferenceExamples(
    std::span<const PairwiseJudgment> judgments,
    std::span<const Entity> entities);

struct ScoreVector {
  std::vector<std::string> entity_index;
  std::vector<double> weights;
};

void ValidateScores(const ScoreVector& scores);

// Tie-aware ordering, best first. Members of a tie group are sorted by id.
struct Ranking {
  std::vector<std::vector<std::string>> ordered;
  std::map<std::string, double> positions;  // 1-based average rank

  std::size_t size() const { return positions.size(); }
  // Entity ids in ranking order, ties broken by id.
  std::vector<std::string> Flattened() const;
};

Ranking RankingFromScores(const ScoreVector& scores);

// Ranking induced by ground-truth values, respecting higher_is_more.
Ranking RankingFromGroundTruth(const GroundTruthRanking& gt);

// nullopt signals a tie.
std::optional<Verdict> GroundTruthVerdict(const GroundTruthRanking& gt,
                                          std::string_view first,
                                          std::string_view second);

}  // namespace pairrank

#endif  // PAIRRANK_DOMAIN_H_
