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

#ifndef POSGLAB_FILTER_H_
#define POSGLAB_FILTER_H_

#include <span>
#include <vector>

#include "posglab/model.h"

namespace posglab {

// Conditional law of the hidden state given the information so far. Entries
// are nonnegative and renormalized to sum to one on construction.
class Belief {
 public:
  Belief() = default;
  // Throws std::invalid_argument on negative/non-finite entries or when the
  // total mass is below kUnderflowGuard.
  explicit Belief(std::vector<double> probs);

  static Belief PointMass(int nx, int x);
  static Belief Uniform(int nx);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int x) const { return probs_[x]; }
  std::span<const double> probs() const { return probs_; }

  bool operator==(const Belief&) const = default;

  static constexpr double kUnderflowGuard = 1e-300;

 private:
  std::vector<double> probs_;
};

// Bayes update after actions (u, v) and next observation y:
//   psi'(z) = sum_x psi(x) p(z, y | x, u, v) / d(y).
// Throws ZeroProbabilityObservation when d(y) <= 1e-300 and
// std::out_of_range on bad indices.
Belief FilterUpdate(const GameModel& model, const Belief& psi, int u, int v, int y);

// Unnormalized update: out[z] = sum_x psi(x) p(z, y | x, u, v). Returns d(y).
double FilterUpdateUnnormalized(const GameModel& model, std::span<const double> psi, int u, int v,
                                int y, std::span<double> out);

// P(Y' = y | psi, u, v) for every y.
std::vector<double> ObsPredictive(const GameModel& model, const Belief& psi, int u, int v);

// Belief-averaged stage cost sum_x psi(x) c(x, u, v).
double StageCost(const GameModel& model, const Belief& psi, int u, int v);
double StageCost(const GameModel& model, std::span<const double> psi, int u, int v);

struct HistoryStep {
  int u = 0;
  int v = 0;
  int y = 0;  // observation received after playing (u, v)
};

inline constexpr int kMaxOracleHistory = 4;

// Posterior of X_T given the initial belief of `model` and a history of length
// T <= 4, by summing the joint probability of every state path x_0..x_T.
// Independent of FilterUpdate; used to check it. Throws
// ZeroProbabilityHistory if the history has probability zero.
Belief BruteForcePosterior(const GameModel& model, std::span<const HistoryStep> history);

}  // namespace posglab

#endif  // POSGLAB_FILTER_H_
