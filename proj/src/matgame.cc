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

#include "posglab/matgame.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "posglab/errors.h"

namespace posglab {

MixedAction MixedAction::PointMass(int n, int i) {
  MixedAction m{std::vector<double>(n, 0.0)};
  m.probs.at(i) = 1.0;
  return m;
}

MixedAction MixedAction::Uniform(int n) { return {std::vector<double>(n, 1.0 / n)}; }

bool MixedAction::IsValid(double tol) const {
  if (probs.empty()) return false;
  double s = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    s += p;
  }
  return std::abs(s - 1.0) <= tol;
}

MatrixGame::MatrixGame(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows < 1 || cols < 1 || a_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("MatrixGame: bad shape");
  }
}

MatrixGame::MatrixGame(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("MatrixGame: ragged rows");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("MatrixGame: empty");
}

MatrixGame MatrixGame::Zeros(int rows, int cols) {
  return MatrixGame(rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0));
}

MatrixGame MatrixGame::NegatedTranspose() const {
  MatrixGame t = Zeros(cols_, rows_);
  for (int u = 0; u < rows_; ++u)
    for (int v = 0; v < cols_; ++v) t(v, u) = -(*this)(u, v);
  return t;
}

namespace {

constexpr double kPivotTol = 1e-9;

// Clips round-off negatives and renormalizes.
MixedAction Clean(std::vector<double> p) {
  double s = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    s += x;
  }
  for (double& x : p) x /= s;
  return {std::move(p)};
}

}  // namespace

GameSolution Solve(const MatrixGame& game) {
  const int m = game.rows();
  const int n = game.cols();
  double lo = game(0, 0), hi = game(0, 0);
  for (double a : game.entries()) {
    if (!std::isfinite(a)) throw NumericalFailure("matrix game has non-finite entries");
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double range = hi > lo ? hi - lo : 1.0;

  // Tableau rows 0..m-1 are constraints, row m is the objective. Columns
  // 0..n-1 are y, n..n+m-1 slacks, n+m the right-hand side.
  const int width = n + m + 1;
  const int rhs = n + m;
  std::vector<double> T(static_cast<std::size_t>(m + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& { return T[static_cast<std::size_t>(r) * width + c]; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = (game(i, j) - lo) / range + 1.0;
    at(i, n + i) = 1.0;
    at(i, rhs) = 1.0;
  }
  for (int j = 0; j < n; ++j) at(m, j) = -1.0;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (int pivots = 0;; ++pivots) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (at(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (pivots >= kMaxSimplexPivots) throw NumericalFailure("simplex exceeded pivot cap");

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = at(i, rhs) / a;
      if (leave < 0 || ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The feasible region is bounded (all entries >= 1), so a ratio always exists.
    if (leave < 0) throw NumericalFailure("simplex found an unbounded direction");

    const double piv = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  const double z = at(m, rhs);
  if (!(z > 0.0)) throw NumericalFailure("simplex returned a nonpositive objective");
  std::vector<double> y(n, 0.0), x(m, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) y[basis[i]] = at(i, rhs);
  for (int i = 0; i < m; ++i) x[i] = at(m, n + i);

  GameSolution sol;
  sol.value = (1.0 / z - 1.0) * range + lo;
  sol.row = Clean(std::move(x));
  sol.col = Clean(std::move(y));
  return sol;
}

BestResponse BestResponseValue(const MatrixGame& game, const MixedAction& opponent, Side side) {
  BestResponse br;
  if (side == Side::kRow) {
    if (opponent.size() != game.cols()) throw std::invalid_argument("opponent size mismatch");
    for (int u = 0; u < game.rows(); ++u) {
      double s = 0.0;
      for (int v = 0; v < game.cols(); ++v) s += game(u, v) * opponent[v];
      if (u == 0 || s > br.value) br = {s, u};
    }
  } else {
    if (opponent.size() != game.rows()) throw std::invalid_argument("opponent size mismatch");
    for (int v = 0; v < game.cols(); ++v) {
      double s = 0.0;
      for (int u = 0; u < game.rows(); ++u) s += game(u, v) * opponent[u];
      if (v == 0 || s < br.value) br = {s, v};
    }
  }
  return br;
}

double Payoff(const MatrixGame& game, const MixedAction& row, const MixedAction& col) {
  double s = 0.0;
  for (int u = 0; u < game.rows(); ++u)
    for (int v = 0; v < game.cols(); ++v) s += row[u] * game(u, v) * col[v];
  return s;
}

}  // namespace posglab
