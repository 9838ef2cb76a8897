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

#ifndef POSGLAB_SHAPLEY_H_
#define POSGLAB_SHAPLEY_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "posglab/errors.h"
#include "posglab/grid.h"
#include "posglab/matgame.h"
#include "posglab/model.h"

namespace posglab {

// Discounted value function on the grid.
struct ValueTable {
  std::shared_ptr<const SimplexGrid> grid;
  std::vector<double> values;
  double alpha = 0.0;

  double At(const Belief& psi) const { return values[grid->Project(psi)]; }
};

// Stationary saddle-point strategies on the grid: the row player's (maximizer)
// and column player's (minimizer) mixed actions at each grid point.
struct StrategyTable {
  std::shared_ptr<const SimplexGrid> grid;
  std::vector<MixedAction> row;
  std::vector<MixedAction> col;

  const MixedAction& RowAt(std::span<const double> psi) const { return row[grid->Project(psi)]; }
  const MixedAction& ColAt(std::span<const double> psi) const { return col[grid->Project(psi)]; }
};

// Observations with predictive probability below this are dropped from the
// continuation sum.
inline constexpr double kObservationFloor = 1e-300;

// Belief dynamics restricted to the grid, computed once per (model, grid):
// for each grid point and action pair, the stage cost and the list of
// (P(y), index of the projected posterior) over feasible observations y.
class GridDynamics {
 public:
  struct Successor {
    double prob = 0.0;
    std::uint32_t index = 0;
  };

  GridDynamics(const GameModel& model, std::shared_ptr<const SimplexGrid> grid, int threads = 1);

  const GameModel& model() const { return *model_; }
  const std::shared_ptr<const SimplexGrid>& grid() const { return grid_; }
  std::size_t size() const { return grid_->size(); }

  double StageCostAt(std::size_t i, int u, int v) const { return stage_cost_[Slot(i, u, v)]; }
  std::span<const Successor> SuccessorsAt(std::size_t i, int u, int v) const;

  // A[u][v] = c~(psi_i, u, v) + alpha * sum_y P(y) values[proj(psi_i'(y))].
  MatrixGame StageMatrix(std::size_t i, std::span<const double> values, double alpha) const;

 private:
  std::size_t Slot(std::size_t i, int u, int v) const {
    return (i * model_->dims.nu + u) * model_->dims.nv + v;
  }

  std::shared_ptr<const GameModel> model_;
  std::shared_ptr<const SimplexGrid> grid_;
  std::vector<double> stage_cost_;
  std::vector<std::size_t> offsets_;  // size slots + 1
  std::vector<Successor> successors_;
};

// Stage matrix at one grid point computed without a GridDynamics cache.
MatrixGame StageMatrix(const GameModel& model, const SimplexGrid& grid,
                       std::span<const double> values, double alpha, std::size_t grid_index);

// One application of the Shapley operator: new value at each grid point is
// the value of its stage matrix. Jacobi sweep; the result does not depend on
// the thread count.
ValueTable ApplyOperator(const GridDynamics& dynamics, std::span<const double> values,
                         double alpha, int threads = 1);

struct ValueIterationOptions {
  double tol = 1e-6;
  int max_iter = 100000;
  int threads = 1;
};

struct ValueIterationResult {
  ValueTable table;
  int iterations = 0;
  // alpha * d / (1 - alpha) for the last sup-norm change d; bounds the
  // sup-distance to the fixed point of the grid operator.
  double residual = 0.0;
};

class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, ValueIterationResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const ValueIterationResult& partial() const { return partial_; }

 private:
  ValueIterationResult partial_;
};

// Iterates the operator from V = 0 until alpha * d / (1 - alpha) <= tol.
// Requires 0 <= alpha < 1 and tol > 0. Throws NotConverged after max_iter.
ValueIterationResult ValueIterate(const GridDynamics& dynamics, double alpha,
                                  const ValueIterationOptions& options = {});
ValueIterationResult ValueIterate(const GameModel& model, std::shared_ptr<const SimplexGrid> grid,
                                  double alpha, const ValueIterationOptions& options = {});

// Optimal mixed actions of every stage matrix built from `values`.
StrategyTable ExtractStrategies(const GridDynamics& dynamics, std::span<const double> values,
                                double alpha, int threads = 1);

struct DiscountedSolution {
  ValueIterationResult vi;
  StrategyTable strategies;
};

DiscountedSolution SolveDiscounted(const GridDynamics& dynamics, double alpha,
                                   const ValueIterationOptions& options = {});

// Solution files: '#' comment lines, then a "key value" header (model, nx,
// nu, nv, m, alpha, residual, iterations, points), then one line per grid
// point in grid order: integer coordinates, value, row strategy, column
// strategy. Reals use 17 significant digits.
struct SolutionFile {
  std::string model_name;
  Dims dims;
  int resolution = 0;
  double alpha = 0.0;
  double residual = 0.0;
  int iterations = 0;
  ValueTable values;
  StrategyTable strategies;
};

void WriteSolution(std::ostream& os, const SolutionFile& solution);
SolutionFile ReadSolution(std::istream& is);
SolutionFile LoadSolution(const std::string& path);

}  // namespace posglab

#endif  // POSGLAB_SHAPLEY_H_
