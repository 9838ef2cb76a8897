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

#ifndef POSGLAB_MODEL_H_
#define POSGLAB_MODEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace posglab {

// Cardinalities of the state, observation and action sets.
struct Dims {
  int nx = 0;  // states
  int ny = 0;  // observations
  int nu = 0;  // player 1 (maximizer) actions
  int nv = 0;  // player 2 (minimizer) actions

  bool operator==(const Dims&) const = default;
};

// Drift certificate for the stability condition
//   E[V(X_{n+1}) | F_n] - V(X_n) <= -h(X_n) + drift_c * 1{X_n in K}.
struct LyapunovCert {
  std::vector<double> V;
  std::vector<double> h;
  std::vector<int> K;
  double drift_c = 0.0;

  bool operator==(const LyapunovCert&) const = default;
};

// A finite zero-sum partially observable stochastic game.
//
// The kernel stores the joint law p(z, y | x, u, v) of the next state z and
// the next observation y. With counting measure on X and the uniform law on
// Y as reference measures, the transition density is ny * p.
//
// The cost c(x, u, v) is what player 2 pays player 1; player 1 maximizes.
struct GameModel {
  std::string name;
  Dims dims;
  std::vector<double> kernel;  // [x][u][v][z][y], row-major
  std::vector<double> cost;    // [x][u][v], row-major
  std::vector<double> initial_belief;
  std::optional<LyapunovCert> lyapunov;

  std::size_t KernelIndex(int x, int u, int v, int z, int y) const {
    return (((static_cast<std::size_t>(x) * dims.nu + u) * dims.nv + v) *
                dims.nx + z) * dims.ny + y;
  }
  std::size_t CostIndex(int x, int u, int v) const {
    return (static_cast<std::size_t>(x) * dims.nu + u) * dims.nv + v;
  }

  double p(int x, int u, int v, int z, int y) const {
    return kernel[KernelIndex(x, u, v, z, y)];
  }
  double c(int x, int u, int v) const { return cost[CostIndex(x, u, v)]; }

  // Transition density against (counting x uniform) reference measures.
  double phi(int x, int u, int v, int z, int y) const {
    return dims.ny * p(x, u, v, z, y);
  }

  // State marginal of the kernel: sum_y p(z, y | x, u, v).
  double PMarg(int x, int u, int v, int z) const;

  // max |c|.
  double CMax() const;

  // True iff every kernel entry is strictly positive.
  bool StrictlyPositive() const;

  bool operator==(const GameModel&) const = default;
};

struct Violation {
  std::string where;
  double magnitude = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool strict_positive = false;
  double c_max = 0.0;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

inline constexpr double kStochasticTolerance = 1e-9;

ValidationReport Validate(const GameModel& model);

// Rescales every kernel row and the initial belief to sum to one. Rows whose
// sum is already one to within floating-point rounding are left bit-for-bit
// untouched, so normalizing twice is the same as normalizing once.
void NormalizeInPlace(GameModel& model);

// Builds a model whose kernel factors as p(z, y | x, u, v) = P[x][u][v][z] *
// Q[z][y]. `transition` is indexed [x][u][v][z], `observation` [z][y].
GameModel MakeFactoredModel(std::string name, int nu, int nv,
                            const std::vector<double>& transition,
                            const std::vector<std::vector<double>>& observation,
                            std::vector<double> cost,
                            std::vector<double> initial_belief);

// Built-in fixtures:
//   CANON2      action-independent chain, matching-pennies cost.
//   SEPARABLE2  CANON2 dynamics with state-independent cost [[3,1],[0,2]].
//   FULLOBS3    three states observed exactly, action-dependent moves.
//   UNCTRL2     single action per player, stationary average cost 1.
//   INSPECT2    action-dependent dynamics and state-dependent cost.
//   SINGLE1     one state.
std::vector<GameModel> CanonicalModels();

// Looks up a built-in model by name; throws std::out_of_range if unknown.
GameModel CanonicalModel(const std::string& name);

}  // namespace posglab

#endif  // POSGLAB_MODEL_H_
