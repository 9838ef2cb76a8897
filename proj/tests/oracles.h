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

// Reference computations used only by the tests. Each one reaches its answer
// by a route independent of the library code it checks.

#ifndef POSGLAB_TESTS_ORACLES_H_
#define POSGLAB_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "posglab/grid.h"
#include "posglab/matgame.h"
#include "posglab/model.h"

namespace posglab::oracle {

// max over p in {0, 1/steps, ..., 1} of min_v [p A(0,v) + (1-p) A(1,v)] for a
// two-row game. Error at most range(A) / steps.
inline double TwoRowGridSearch(const MatrixGame& a, int steps) {
  double best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s <= steps; ++s) {
    const double p = static_cast<double>(s) / steps;
    double worst = std::numeric_limits<double>::infinity();
    for (int v = 0; v < a.cols(); ++v) worst = std::min(worst, p * a(0, v) + (1 - p) * a(1, v));
    best = std::max(best, worst);
  }
  return best;
}

// Value of a 2x2 game by the textbook formula: a pure saddle if one exists,
// otherwise the equalizing mixture.
inline double TwoByTwoValue(double a, double b, double c, double d) {
  const double lower = std::max(std::min(a, b), std::min(c, d));
  const double upper = std::min(std::max(a, c), std::max(b, d));
  if (lower == upper) return lower;
  return (a * d - b * c) / (a + d - b - c);
}

// Row-major Markov matrix power applied to a vector: sum_{t<T} alpha^t P^t c.
inline std::vector<double> TruncatedDiscountedSeries(const std::vector<std::vector<double>>& p,
                                                     const std::vector<double>& c, double alpha,
                                                     int terms) {
  const std::size_t n = c.size();
  std::vector<double> total(n, 0.0), term = c;
  double scale = 1.0;
  for (int t = 0; t < terms; ++t) {
    for (std::size_t i = 0; i < n; ++i) total[i] += scale * term[i];
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[i] += p[i][j] * term[j];
    }
    term = std::move(next);
    scale *= alpha;
  }
  return total;
}

// Stationary law of an irreducible chain: solve pi (P - I) = 0, sum pi = 1 by
// Gaussian elimination with the last balance equation replaced by the
// normalization.
inline std::vector<double> StationaryDistribution(const std::vector<std::vector<double>>& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[j][i] = p[i][j] - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) a[n - 1][i] = 1.0;
  a[n - 1][n] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = a[i][n] / a[i][i];
  return pi;
}

// Discounted value of the fully observed game on X with 2x2 action sets,
// iterated until successive sweeps differ by less than tol * (1 - alpha).
inline std::vector<double> FullyObservedValue(const GameModel& m, double alpha, double tol) {
  const int nx = m.dims.nx;
  std::vector<double> v(nx, 0.0);
  for (int it = 0; it < 1000000; ++it) {
    std::vector<double> next(nx);
    double diff = 0.0;
    for (int x = 0; x < nx; ++x) {
      double q[2][2];
      for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < 2; ++w) {
          double cont = 0.0;
          for (int z = 0; z < nx; ++z) cont += m.PMarg(x, u, w, z) * v[z];
          q[u][w] = m.c(x, u, w) + alpha * cont;
        }
      }
      next[x] = TwoByTwoValue(q[0][0], q[0][1], q[1][0], q[1][1]);
      diff = std::max(diff, std::abs(next[x] - v[x]));
    }
    v = std::move(next);
    if (diff < tol * (1.0 - alpha)) break;
  }
  return v;
}

// L1-nearest grid point by scanning every point; first (smallest) index wins
// among points within 1e-12 of the minimum.
inline std::size_t ExhaustiveProjection(const SimplexGrid& grid, std::span<const double> psi) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = L1Distance(psi, grid.probs(i));
    if (d < best_d - 1e-12) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

inline double ProjectionDistance(const SimplexGrid& grid, std::span<const double> psi,
                                 std::size_t i) {
  return L1Distance(psi, grid.probs(i));
}

// A random point of the simplex (flat Dirichlet).
inline std::vector<double> RandomSimplexPoint(int n, std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  for (double& x : p) x = e(gen);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

// A model with every kernel entry strictly positive.
inline GameModel RandomModel(int nx, int ny, int nu, int nv, std::mt19937_64& gen) {
  GameModel m;
  m.name = "RANDOM";
  m.dims = {nx, ny, nu, nv};
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::uniform_real_distribution<double> cost(-2.0, 2.0);
  m.kernel.resize(static_cast<std::size_t>(nx) * nu * nv * nx * ny);
  const std::size_t row = static_cast<std::size_t>(nx) * ny;
  for (std::size_t r = 0; r < m.kernel.size(); r += row) {
    double s = 0.0;
    for (std::size_t k = 0; k < row; ++k) s += (m.kernel[r + k] = unif(gen));
    for (std::size_t k = 0; k < row; ++k) m.kernel[r + k] /= s;
  }
  m.cost.resize(static_cast<std::size_t>(nx) * nu * nv);
  for (double& c : m.cost) c = cost(gen);
  m.initial_belief = RandomSimplexPoint(nx, gen);
  return m;
}

}  // namespace posglab::oracle

#endif  // POSGLAB_TESTS_ORACLES_H_
