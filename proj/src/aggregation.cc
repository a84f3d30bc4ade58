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

#include "pairrank/aggregation.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pairrank/hashing.h"

namespace pairrank {
namespace {

constexpr int kMaxHalvings = 60;

std::vector<std::string> Uncompared(const std::vector<std::size_t>& degree,
                                    std::span<const Entity> entities) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < degree.size(); ++i) {
    if (degree[i] == 0) ids.push_back(entities[i].id);
  }
  return ids;
}

ScoreVector MakeScores(std::span<const Entity> entities,
                       std::vector<double> weights) {
  ScoreVector scores;
  scores.entity_index.reserve(entities.size());
  for (const Entity& e : entities) scores.entity_index.push_back(e.id);
  scores.weights = std::move(weights);
  return scores;
}

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Dual of (1/2)|w|^2 + C sum_k max(0, 1 - w.x_k) with C = 1 / (lambda m),
// the primal scaled by 1/lambda:
//   min_a (1/2) a'Qa - sum_k a_k,  0 <= a_k <= C,  w = sum_k a_k x_k.
// x_k = e_winner - e_loser, so Q_kk = 2 and w.x_k is a difference of two
// coordinates.
SvmSolution DualCoordinateFit(std::span<const DifferenceExample> examples,
                              std::size_t n, const SvmConfig& cfg) {
  const double c = 1.0 / (cfg.lambda * static_cast<double>(examples.size()));
  std::vector<double> alpha(examples.size(), 0.0);
  std::vector<double> w(n, 0.0);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::mt19937_64 rng(cfg.seed);
  SvmSolution sol;
  sol.weights = w;
  double best = SvmObjective(examples, w, cfg.lambda);
  sol.objective_trace.push_back(best);
  for (int t = 1; t <= cfg.max_passes; ++t) {
    StableShuffle(order.begin(), order.end(), rng);
    double max_violation = 0.0;
    for (std::size_t k : order) {
      const DifferenceExample& ex = examples[k];
      const double g = w[ex.winner_index] - w[ex.loser_index] - 1.0;
      // Projected gradient; zero at a box face pointing outward.
      const double pg = alpha[k] == 0.0 ? std::min(g, 0.0)
                        : alpha[k] == c ? std::max(g, 0.0)
                                        : g;
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;
      const double next = std::clamp(alpha[k] - g / 2.0, 0.0, c);
      const double delta = next - alpha[k];
      alpha[k] = next;
      w[ex.winner_index] += delta;
      w[ex.loser_index] -= delta;
    }
    const double objective = SvmObjective(examples, w, cfg.lambda);
    if (objective < best) {
      best = objective;
      sol.weights = w;
    }
    sol.objective_trace.push_back(best);
    if (max_violation < cfg.tolerance) break;
  }
  return sol;
}

}  // namespace

AggregateResult CountAggregate(const ComparisonSet& cs) {
  const std::size_t n = cs.entity_index.size();
  AggregateResult result;
  result.scores.entity_index = cs.entity_index;
  result.scores.weights.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long long net = 0;
    long long total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      net += cs.outcomes(i, j);
      total += cs.compared(i, j);
    }
    if (total == 0) {
      result.uncompared.push_back(cs.entity_index[i]);
    } else {
      result.scores.weights[i] =
          static_cast<double>(net) / static_cast<double>(total);
    }
  }
  return result;
}

std::string_view SvmSolverName(SvmSolver solver) {
  switch (solver) {
    case SvmSolver::kPegasos:
      return "pegasos";
    case SvmSolver::kSafeguarded:
      return "safeguarded";
    case SvmSolver::kDualCoordinate:
      break;
  }
  return "dual-cd";
}

SvmSolver ParseSvmSolver(std::string_view name) {
  if (name == "pegasos") return SvmSolver::kPegasos;
  if (name == "safeguarded") return SvmSolver::kSafeguarded;
  if (name == "dual-cd") return SvmSolver::kDualCoordinate;
  throw ValidationError("unknown SVM solver '" + std::string(name) + "'");
}

void ValidateSvmConfig(const SvmConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw ValidationError("SVM lambda must be positive");
  }
  if (cfg.epochs < 1) throw ValidationError("SVM epochs must be at least 1");
  if (cfg.max_passes < 1) {
    throw ValidationError("SVM max passes must be at least 1");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw ValidationError("SVM tolerance must be positive");
  }
}

double SvmObjective(std::span<const DifferenceExample> examples,
                    std::span<const double> w, double lambda) {
  double norm2 = 0.0;
  for (double v : w) norm2 += v * v;
  double hinge = 0.0;
  for (const DifferenceExample& ex : examples) {
    hinge += std::max(0.0, 1.0 - (w[ex.winner_index] - w[ex.loser_index]));
  }
  const double m = static_cast<double>(examples.size());
  return 0.5 * lambda * norm2 + (examples.empty() ? 0.0 : hinge / m);
}

SvmSolution SvmFit(std::span<const DifferenceExample> examples, std::size_t n,
                   const SvmConfig& cfg) {
  ValidateSvmConfig(cfg);
  if (examples.empty()) {
    throw ValidationError("SVM aggregation needs at least one example");
  }
  for (const DifferenceExample& ex : examples) {
    if (ex.winner_index >= n || ex.loser_index >= n) {
      throw ValidationError("difference example index out of range");
    }
    if (ex.winner_index == ex.loser_index) {
      throw ValidationError("difference example compares an entity with "
                            "itself");
    }
  }

  if (cfg.solver == SvmSolver::kDualCoordinate) {
    return DualCoordinateFit(examples, n, cfg);
  }

  const double m = static_cast<double>(examples.size());
  SvmSolution sol;
  sol.weights.assign(n, 0.0);
  std::vector<double>& w = sol.weights;
  double objective = SvmObjective(examples, w, cfg.lambda);
  sol.objective_trace.reserve(cfg.epochs + 1);
  sol.objective_trace.push_back(objective);

  std::vector<long long> net_active(n);
  std::vector<double> grad(n);
  std::vector<double> candidate(n);
  for (int t = 1; t <= cfg.epochs; ++t) {
    // Subgradient: lambda w - (1/m) sum over margin violators of
    // (x_winner - x_loser).
    std::fill(net_active.begin(), net_active.end(), 0);
    for (const DifferenceExample& ex : examples) {
      if (w[ex.winner_index] - w[ex.loser_index] < 1.0) {
        ++net_active[ex.winner_index];
        --net_active[ex.loser_index];
      }
    }
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = cfg.lambda * w[i] - static_cast<double>(net_active[i]) / m;
      zero = zero && grad[i] == 0.0;
    }
    if (zero) {
      sol.objective_trace.push_back(objective);
      continue;
    }

    double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
    if (cfg.solver == SvmSolver::kPegasos) {
      for (std::size_t i = 0; i < n; ++i) w[i] -= eta * grad[i];
      objective = SvmObjective(examples, w, cfg.lambda);
    } else {
      for (int h = 0; h < kMaxHalvings; ++h, eta *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) {
          candidate[i] = w[i] - eta * grad[i];
        }
        const double next = SvmObjective(examples, candidate, cfg.lambda);
        if (next <= objective) {
          w.swap(candidate);
          objective = next;
          break;
        }
      }
    }
    sol.objective_trace.push_back(objective);
  }
  return sol;
}

AggregateResult SvmAggregate(std::span<const PairwiseJudgment> judgments,
                             std::span<const Entity> entities,
                             const SvmConfig& cfg) {
  const auto examples = ToDifferenceExamples(judgments, entities);
  SvmSolution sol = SvmFit(examples, entities.size(), cfg);
  std::vector<std::size_t> degree(entities.size(), 0);
  for (const DifferenceExample& ex : examples) {
    ++degree[ex.winner_index];
    ++degree[ex.loser_index];
  }
  AggregateResult result;
  result.scores = MakeScores(entities, std::move(sol.weights));
  result.uncompared = Uncompared(degree, entities);
  return result;
}

void ValidateBtFitConfig(const BtFitConfig& cfg) {
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw ValidationError("BT learning rate must be positive");
  }
  if (cfg.epochs < 1) throw ValidationError("BT epochs must be at least 1");
  if (!(cfg.l2 >= 0.0) || !std::isfinite(cfg.l2)) {
    throw ValidationError("BT l2 must be non-negative");
  }
}

std::vector<BtTerm> ToBtTerms(std::span<const PairwiseJudgment> judgments,
                              std::span<const Entity> entities) {
  const auto index = IndexEntities(entities);
  std::vector<BtTerm> terms;
  terms.reserve(judgments.size());
  for (const PairwiseJudgment& j : judgments) {
    ValidateJudgment(j);
    auto a = index.find(j.first);
    auto b = index.find(j.second);
    if (a == index.end() || b == index.end()) {
      throw ValidationError("judgment references unknown entity '" +
                            (a == index.end() ? j.first : j.second) + "'");
    }
    terms.push_back({a->second, b->second,
                     j.verdict == Verdict::kFirstGreater ? 1.0 : 0.0});
  }
  return terms;
}

double BtLoss(std::span<const BtTerm> terms, std::span<const double> w,
              double l2) {
  double loss = 0.0;
  for (const BtTerm& term : terms) {
    const double d = w[term.first] - w[term.second];
    // -log sigmoid(d) = softplus(-d); -log(1 - sigmoid(d)) = softplus(d).
    loss += term.target * Softplus(-d) + (1.0 - term.target) * Softplus(d);
  }
  double norm2 = 0.0;
  for (double v : w) norm2 += v * v;
  return loss + 0.5 * l2 * norm2;
}

std::vector<double> BtGradient(std::span<const BtTerm> terms,
                               std::span<const double> w, double l2) {
  std::vector<double> grad(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) grad[i] = l2 * w[i];
  for (const BtTerm& term : terms) {
    const double r = Sigmoid(w[term.first] - w[term.second]) - term.target;
    grad[term.first] += r;
    grad[term.second] -= r;
  }
  return grad;
}

AggregateResult BtFit(std::span<const PairwiseJudgment> judgments,
                      std::span<const Entity> entities,
                      const BtFitConfig& cfg) {
  ValidateBtFitConfig(cfg);
  if (judgments.empty()) {
    throw ValidationError("BT fit needs at least one judgment");
  }
  const auto terms = ToBtTerms(judgments, entities);
  const std::size_t n = entities.size();
  std::vector<std::size_t> degree(n, 0);
  for (const BtTerm& term : terms) {
    ++degree[term.first];
    ++degree[term.second];
  }

  // Gradient steps scaled per coordinate by 1/degree. The Hessian diagonal
  // of L is at most degree/4, so the step stays stable for any graph.
  std::vector<double> w(n, 0.0);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::vector<double> grad = BtGradient(terms, w, cfg.l2);
    for (std::size_t i = 0; i < n; ++i) {
      if (degree[i] == 0) continue;
      w[i] -= cfg.learning_rate * grad[i] / static_cast<double>(degree[i]);
    }
  }

  // Only differences are identified; centre the compared entities so the
  // uncompared ones stay at 0 and the total sums to 0.
  double sum = 0.0;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] > 0) {
      sum += w[i];
      ++compared;
    }
  }
  const double mean = compared > 0 ? sum / static_cast<double>(compared) : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] > 0) w[i] -= mean;
  }

  AggregateResult result;
  result.scores = MakeScores(entities, std::move(w));
  result.uncompared = Uncompared(degree, entities);
  return result;
}

}  // namespace pairrank
