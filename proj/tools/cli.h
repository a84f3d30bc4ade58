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

// The `pairrank` command line: judge | aggregate | evaluate | simulate |
// report. Exit codes: 0 success, 1 validation or usage error, 2 remote judge
// failure.

#ifndef PAIRRANK_TOOLS_CLI_H_
#define PAIRRANK_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pairrank/aggregation.h"
#include "pairrank/judges.h"

namespace pairrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRemote = 2;

// `args` excludes the program name.
int RunPairrank(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

struct Collected {
  // Successful judgments, in query order.
  std::vector<PairwiseJudgment> judgments;
  // Set when a remote failure stopped collection early.
  std::unique_ptr<RemoteJudgeError> failure;
};

// Queries `judge` with at most `jobs` concurrent requests.
Collected CollectJudgments(Judge& judge, std::span<const JudgeQuery> queries,
                           std::size_t jobs);

struct SimulationConfig {
  std::size_t n = 100;
  double flip_probability = 0.2;
  std::vector<std::size_t> ks = {5, 30};
  std::vector<std::string> methods = {"count", "svm", "bt"};
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  SvmConfig svm;
  BtFitConfig bt;
};

struct TrendCell {
  std::string method;
  std::size_t k = 0;
  std::size_t trials = 0;
  double mean_rho = 0.0;
  double sd_rho = 0.0;
};

std::vector<TrendCell> SimulateTrend(const SimulationConfig& config);

std::string TrendCsv(std::span<const TrendCell> cells);

}  // namespace pairrank::cli

#endif  // PAIRRANK_TOOLS_CLI_H_
