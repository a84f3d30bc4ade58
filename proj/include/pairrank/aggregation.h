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

// Aggregators turning pairwise judgments into per-entity scores.
//
//   Count  w_i = sum_j o_ij / sum_j s_ij, the mean signed outcome of i.
//
//   SVM    one-hot difference vectors x_winner - x_loser; minimizes the
//          soft-margin primal
//            (lambda/2) |w|^2 + (1/m) sum_k max(0, 1 - (w_win(k) - w_lose(k)))
//          by dual coordinate descent (default) or full-batch subgradient
//          descent.
//
//   BT     latent scores with p_ij = sigmoid(w_i - w_j), fitted by
//          minimizing the binary cross entropy
//            L = -sum_k [t_k log p_k + (1 - t_k) log(1 - p_k)]
//          plus (l2/2) |w|^2, one term per judgment.

#ifndef PAIRRANK_AGGREGATION_H_
#define PAIRRANK_AGGREGATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairrank/domain.h"

namespace pairrank {

struct AggregateResult {
  ScoreVector scores;
  // Entities that appear in no judgment; their weight is 0.
  std::vector<std::string> uncompared;
};

AggregateResult CountAggregate(const ComparisonSet& cs);

enum class SvmSolver {
  // Subgradient steps eta_t = 1 / (lambda t), always taken.
  kPegasos,
  // Same proposal, halved until the primal objective does not increase.
  // Can stall at a kink of the hinge.
  kSafeguarded,
  // Coordinate descent on the box-constrained dual, passes in a seeded
  // random order until the projected gradient vanishes; converges to the
  // exact optimum.
  kDualCoordinate,
};

std::string_view SvmSolverName(SvmSolver solver);
SvmSolver ParseSvmSolver(std::string_view name);

struct SvmConfig {
  double lambda = 1e-3;
  int epochs = 200;       // subgradient solvers
  int max_passes = 100000;  // dual-cd
  double tolerance = 1e-10;  // dual-cd, on the largest projected gradient
  std::uint64_t seed = 0;  // dual-cd visiting order
  SvmSolver solver = SvmSolver::kDualCoordinate;
};

void ValidateSvmConfig(const SvmConfig& cfg);

double SvmObjective(std::span<const DifferenceExample> examples,
                    std::span<const double> w, double lambda);

struct SvmSolution {
  std::vector<double> weights;
  // objective_trace[0] is the objective at w = 0, entry t after epoch (or
  // dual pass) t.
  // The safeguarded and dual solvers return their best iterate, so their
  // traces never increase.
  std::vector<double> objective_trace;
};

SvmSolution SvmFit(std::span<const DifferenceExample> examples, std::size_t n,
                   const SvmConfig& cfg);

AggregateResult SvmAggregate(std::span<const PairwiseJudgment> judgments,
                             std::span<const Entity> entities,
                             const SvmConfig& cfg);

struct BtFitConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 0.0;
  std::uint64_t seed = 0;  // echoed for provenance; the fit is deterministic
};

void ValidateBtFitConfig(const BtFitConfig& cfg);

// One cross-entropy term: target is 1 when `first` won.
struct BtTerm {
  std::size_t first = 0;
  std::size_t second = 0;
  double target = 1.0;
};

std::vector<BtTerm> ToBtTerms(std::span<const PairwiseJudgment> judgments,
                              std::span<const Entity> entities);

double BtLoss(std::span<const BtTerm> terms, std::span<const double> w,
              double l2);
std::vector<double> BtGradient(std::span<const BtTerm> terms,
                               std::span<const double> w, double l2);

AggregateResult BtFit(std::span<const PairwiseJudgment> judgments,
                      std::span<const Entity> entities,
                      const BtFitConfig& cfg);

}  // namespace pairrank

#endif  // PAIRRANK_AGGREGATION_H_
