// Copyright 2026 The posglab Authors.
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

#ifndef POSGLAB_ROLLOUT_H_
#define POSGLAB_ROLLOUT_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "posglab/model.h"
#include "posglab/shapley.h"
#include "posglab/strategy.h"

namespace posglab {

struct RolloutOptions {
  std::size_t episodes = 200;
  std::int64_t horizon = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Per-episode averages of the hidden-state cost c(X_k, U_k, V_k) and of the
// belief cost c~(Psi_k, U_k, V_k) along the same paths.
struct RolloutResult {
  std::size_t episodes = 0;
  std::int64_t horizon = 0;
  double mean_avg_payoff = 0.0;
  double std_error = 0.0;
  std::vector<double> per_episode_averages;
  double belief_mean_avg_payoff = 0.0;
  double belief_std_error = 0.0;
  std::vector<double> per_episode_belief_averages;
  // Hidden-cost means over the first and second halves of each episode; a
  // large gap means the horizon is too short for the chain to settle.
  double first_half_mean = 0.0;
  double second_half_mean = 0.0;
};

// Plays s1 (player 1) against s2 (player 2) on the hidden-state model, with
// X_0 ~ initial_belief and Psi_0 = initial_belief. Deterministic given the
// seed, whatever the thread count.
RolloutResult Simulate(const GameModel& model, const Strategy& s1, const Strategy& s2,
                       const RolloutOptions& options);

struct PayoffEquivalenceReport {
  RolloutResult rollout;
  double hidden_mean = 0.0;
  double belief_mean = 0.0;
  double difference = 0.0;
  double combined_std_error = 0.0;  // sqrt(se_hidden^2 + se_belief^2)
  double tolerance = 0.0;           // 3 combined standard errors
  double max_abs_episode_difference = 0.0;
  bool pass = false;
};

PayoffEquivalenceReport PayoffEquivalenceTest(const GameModel& model, const Strategy& s1,
                                              const Strategy& s2, const RolloutOptions& options);

struct AdversaryPool {
  std::vector<Strategy> player1;  // deviations for player 1, played against the table's player 2
  std::vector<Strategy> player2;  // deviations for player 2, played against the table's player 1
};

// Uniform random, every pure action, and the myopic best response to the
// table's announced mixed action, for each side.
AdversaryPool DefaultAdversaryPool(const GameModel& model,
                                   std::shared_ptr<const StrategyTable> table);

struct SaddleComparison {
  std::string adversary;
  std::string side;  // "p1" or "p2": who deviates; "none" for table vs table
  double mean = 0.0;
  double std_error = 0.0;
  // p2 deviates: pass iff mean >= bound = gamma - slack.
  // p1 deviates: pass iff mean <= bound = gamma + slack.
  // none: pass iff |mean - gamma| <= bound = slack.
  double bound = 0.0;
  double slack = 0.0;  // 3 * std_error + budget
  bool pass = false;
};

struct SaddleReport {
  double gamma = 0.0;
  double budget = 0.0;
  std::vector<SaddleComparison> comparisons;

  bool pass() const;
};

SaddleReport SaddleTest(const GameModel& model, std::shared_ptr<const StrategyTable> table,
                        double gamma, const AdversaryPool& pool, const RolloutOptions& options,
                        double budget);

void WriteSaddleReport(std::ostream& os, const SaddleReport& report);

}  // namespace posglab

#endif  // POSGLAB_ROLLOUT_H_
