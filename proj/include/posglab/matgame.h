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

#ifndef POSGLAB_MATGAME_H_
#define POSGLAB_MATGAME_H_

#include <initializer_list>
#include <span>
#include <vector>

namespace posglab {

// Probability vector over one player's actions.
struct MixedAction {
  std::vector<double> probs;

  static MixedAction PointMass(int n, int i);
  static MixedAction Uniform(int n);

  int size() const { return static_cast<int>(probs.size()); }
  double operator[](int i) const { return probs[i]; }
  bool IsValid(double tol = 1e-9) const;

  bool operator==(const MixedAction&) const = default;
};

// Zero-sum matrix game. Entry (u, v) is what the column player pays the row
// player; the row player maximizes.
class MatrixGame {
 public:
  MatrixGame() = default;
  MatrixGame(int rows, int cols, std::vector<double> entries);
  MatrixGame(std::initializer_list<std::initializer_list<double>> rows);
  static MatrixGame Zeros(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int u, int v) const { return a_[static_cast<std::size_t>(u) * cols_ + v]; }
  double& operator()(int u, int v) { return a_[static_cast<std::size_t>(u) * cols_ + v]; }
  std::span<const double> entries() const { return a_; }

  // -A^T: the same game with the players' roles swapped.
  MatrixGame NegatedTranspose() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

struct GameSolution {
  double value = 0.0;
  MixedAction row;  // maximizer
  MixedAction col;  // minimizer
};

enum class Side { kRow, kCol };

struct BestResponse {
  double value = 0.0;
  int index = 0;
};

inline constexpr int kMaxSimplexPivots = 10000;

// Value and one optimal mixed strategy per player. The matrix is rescaled to
// [1, 2], the LP  max 1'y s.t. A y <= 1, y >= 0  is solved with a dense
// tableau simplex under Bland's rule, and the row strategy is read from the
// duals. The output is a deterministic function of the matrix. Throws
// NumericalFailure past kMaxSimplexPivots pivots or on non-finite input.
GameSolution Solve(const MatrixGame& game);

// Side::kRow: best row reply to a column mixed action, max_u (A nu)[u].
// Side::kCol: best column reply to a row mixed action, min_v (mu' A)[v].
// Ties go to the lowest index.
BestResponse BestResponseValue(const MatrixGame& game, const MixedAction& opponent, Side side);

// Expected payoff mu' A nu.
double Payoff(const MatrixGame& game, const MixedAction& row, const MixedAction& col);

}  // namespace posglab

#endif  // POSGLAB_MATGAME_H_
