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

#ifndef POSGLAB_COUPLING_H_
#define POSGLAB_COUPLING_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "posglab/filter.h"
#include "posglab/model.h"
#include "posglab/rng.h"
#include "posglab/shapley.h"
#include "posglab/strategy.h"

namespace posglab {

// Two copies of the chain driven by the same action sequence, split on the
// small set K x K. With
//   delta = 1/2 (|K| min_{x in K, u, v, z in K} p(z | x, u, v))^2
// the pair kernel dominates delta * Theta, where Theta is uniform on K x K.
struct SplitChainConfig {
  std::vector<int> small_set;        // K, sorted and unique
  std::vector<char> in_small_set;    // indicator over X
  double delta = 0.0;
  double alpha_for_bound = 0.99;

  bool InPair(int a, int b) const { return in_small_set[a] && in_small_set[b]; }
};

// Throws NoMinorization when the minimum transition probability within K is
// zero, std::invalid_argument for an empty or out-of-range K.
double ComputeDelta(const GameModel& model, std::span<const int> small_set);

SplitChainConfig MakeSplitChainConfig(const GameModel& model, std::vector<int> small_set,
                                      double alpha_for_bound = 0.99);

// Uses a caller-chosen delta; throws InvalidResidual if
// p(z^ | x^) p(z~ | x~) - delta Theta(z^, z~) < 0 anywhere on K x K.
SplitChainConfig MakeSplitChainConfigWithDelta(const GameModel& model, std::vector<int> small_set,
                                               double delta, double alpha_for_bound = 0.99);

// Every state of X.
std::vector<int> AllStates(const GameModel& model);

struct SplitChainState {
  int x_hat = 0;
  int x_tilde = 0;
  int level = 0;     // 1 only on K x K
  int y_hat = -1;    // -1 before the first transition
  int y_tilde = -1;
  Belief psi_hat;
  Belief psi_tilde;
};

// Draws (x^, x~) from psi_hat (x) psi_tilde and sets level 1 with probability
// delta if the pair lies in K x K.
SplitChainState InitialSplitState(const SplitChainConfig& config, const Belief& psi_hat,
                                  const Belief& psi_tilde, Rng& rng);

// One transition under the shared actions (u, v):
//   level 1:              next pair ~ Theta;
//   level 0, in K x K:    next pair ~ (p x p - delta Theta) / (1 - delta);
//   otherwise:            next pair ~ p x p.
// Each copy's observation is then drawn from the kernel conditioned on its
// transition, both beliefs are filtered, and the new level is 1 with
// probability delta if the new pair lies in K x K.
SplitChainState StepSplitChain(const GameModel& model, const SplitChainConfig& config,
                               const SplitChainState& state, int u, int v, Rng& rng);

struct CouplingOptions {
  std::size_t n_samples = 10000;
  std::int64_t horizon_cap = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct CouplingTimeEstimate {
  std::size_t n_samples = 0;
  std::size_t censored = 0;
  double mean = 0.0;
  double halfwidth = 0.0;  // normal-approximation 95% CI half-width
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<std::int64_t> taus;  // uncensored hitting times, path order
};

// Monte Carlo estimate of tau = min{n >= 0 : level_n = 1}. Player 1 acts on
// the psi_hat copy's belief, player 2 on the psi_tilde copy's belief; both
// chains move under the same (u, v). Paths longer than horizon_cap are
// counted as censored. Throws AllCensored if every path is censored.
CouplingTimeEstimate EstimateCouplingTime(const GameModel& model, const SplitChainConfig& config,
                                          const Belief& psi_hat, const Belief& psi_tilde,
                                          const Strategy& player1, const Strategy& player2,
                                          const CouplingOptions& options);

struct ValueBoundReport {
  double delta = 0.0;
  std::size_t n_samples = 0;
  double mean_tau = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t censored = 0;
  double value_hat = 0.0;
  double value_tilde = 0.0;
  double value_diff = 0.0;   // |V(psi^) - V(psi~)|
  double grid_slack = 0.0;   // 2 * VI residual + c_max / (1 - alpha) * projection L1 error
  double bound_value = 0.0;  // 2 c_max (E tau + CI half-width) + grid_slack
  bool pass = false;
};

// Checks |V_alpha(psi^) - V_alpha(psi~)| <= 2 ||c|| E[tau] (+ budget), with
// the coupled chains driven by the discounted-optimal grid strategies.
ValueBoundReport CheckValueDifferenceBound(const GridDynamics& dynamics,
                                           const DiscountedSolution& solution,
                                           const Belief& psi_hat, const Belief& psi_tilde,
                                           const SplitChainConfig& config,
                                           const CouplingOptions& options);

void WriteCouplingReport(std::ostream& os, const ValueBoundReport& report);

struct LyapunovReport {
  std::vector<Violation> violations;
  double worst_slack = 0.0;  // max over (x,u,v) of drift - (-h(x) + c 1_K(x))
  int worst_x = 0, worst_u = 0, worst_v = 0;
  // With X finite, V is bounded, so E[V(X_n)] / n <= max|V| / n -> 0 under any
  // strategies.
  double sup_abs_v = 0.0;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

inline constexpr double kDriftTolerance = 1e-9;

LyapunovReport ValidateLyapunov(const GameModel& model, const LyapunovCert& cert);

}  // namespace posglab

#endif  // POSGLAB_COUPLING_H_
