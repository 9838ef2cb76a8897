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

#include "posglab/filter.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "posglab/errors.h"

namespace posglab {

Belief::Belief(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Belief: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("Belief: negative or non-finite entry");
    }
    sum += p;
  }
  if (sum <= kUnderflowGuard) throw std::invalid_argument("Belief: total mass underflows");
  for (double& p : probs_) p /= sum;
}

Belief Belief::PointMass(int nx, int x) {
  std::vector<double> p(nx, 0.0);
  p.at(x) = 1.0;
  return Belief(std::move(p));
}

Belief Belief::Uniform(int nx) { return Belief(std::vector<double>(nx, 1.0)); }

namespace {

void CheckAction(const GameModel& model, int u, int v) {
  if (u < 0 || u >= model.dims.nu) throw std::out_of_range("player 1 action out of range");
  if (v < 0 || v >= model.dims.nv) throw std::out_of_range("player 2 action out of range");
}

}  // namespace

double FilterUpdateUnnormalized(const GameModel& model, std::span<const double> psi, int u, int v,
                                int y, std::span<double> out) {
  const int nx = model.dims.nx;
  for (int z = 0; z < nx; ++z) out[z] = 0.0;
  for (int x = 0; x < nx; ++x) {
    const double w = psi[x];
    if (w == 0.0) continue;
    for (int z = 0; z < nx; ++z) out[z] += w * model.p(x, u, v, z, y);
  }
  double d = 0.0;
  for (int z = 0; z < nx; ++z) d += out[z];
  return d;
}

Belief FilterUpdate(const GameModel& model, const Belief& psi, int u, int v, int y) {
  CheckAction(model, u, v);
  if (y < 0 || y >= model.dims.ny) throw std::out_of_range("observation out of range");
  if (psi.size() != model.dims.nx) throw std::invalid_argument("belief has wrong dimension");
  std::vector<double> next(model.dims.nx);
  const double d = FilterUpdateUnnormalized(model, psi.probs(), u, v, y, next);
  if (!(d > Belief::kUnderflowGuard)) {
    throw ZeroProbabilityObservation("observation y=" + std::to_string(y) +
                                     " has zero probability under the current belief and actions");
  }
  return Belief(std::move(next));
}

std::vector<double> ObsPredictive(const GameModel& model, const Belief& psi, int u, int v) {
  CheckAction(model, u, v);
  const Dims& d = model.dims;
  std::vector<double> out(d.ny, 0.0);
  for (int x = 0; x < d.nx; ++x) {
    const double w = psi[x];
    if (w == 0.0) continue;
    for (int z = 0; z < d.nx; ++z)
      for (int y = 0; y < d.ny; ++y) out[y] += w * model.p(x, u, v, z, y);
  }
  return out;
}

double StageCost(const GameModel& model, std::span<const double> psi, int u, int v) {
  double s = 0.0;
  for (int x = 0; x < model.dims.nx; ++x) s += psi[x] * model.c(x, u, v);
  return s;
}

double StageCost(const GameModel& model, const Belief& psi, int u, int v) {
  CheckAction(model, u, v);
  return StageCost(model, psi.probs(), u, v);
}

Belief BruteForcePosterior(const GameModel& model, std::span<const HistoryStep> history) {
  const int nx = model.dims.nx;
  const int T = static_cast<int>(history.size());
  if (T > kMaxOracleHistory) throw std::invalid_argument("BruteForcePosterior: history too long");
  for (const HistoryStep& s : history) {
    CheckAction(model, s.u, s.v);
    if (s.y < 0 || s.y >= model.dims.ny) throw std::out_of_range("observation out of range");
  }

  // Odometer over all paths x_0..x_T.
  std::vector<int> path(T + 1, 0);
  std::vector<double> mass(nx, 0.0);
  while (true) {
    double joint = model.initial_belief[path[0]];
    for (int t = 0; t < T && joint != 0.0; ++t) {
      const HistoryStep& s = history[t];
      joint *= model.p(path[t], s.u, s.v, path[t + 1], s.y);
    }
    mass[path[T]] += joint;

    int pos = 0;
    while (pos <= T && ++path[pos] == nx) path[pos++] = 0;
    if (pos > T) break;
  }

  double total = 0.0;
  for (double m : mass) total += m;
  if (!(total > 0.0)) throw ZeroProbabilityHistory("history has probability zero");
  return Belief(std::move(mass));
}

}  // namespace posglab
