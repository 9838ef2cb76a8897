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

#include "posglab/shapley.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "posglab/filter.h"
#include "posglab/parallel.h"

namespace posglab {
namespace {

// Feasible observations from grid point i under (u, v), in increasing y.
void ComputeSuccessors(const GameModel& model, const SimplexGrid& grid, std::size_t i, int u,
                       int v, std::vector<GridDynamics::Successor>& out) {
  const int nx = model.dims.nx;
  std::vector<double> next(nx);
  const auto psi = grid.probs(i);
  for (int y = 0; y < model.dims.ny; ++y) {
    const double d = FilterUpdateUnnormalized(model, psi, u, v, y, next);
    if (!(d >= kObservationFloor)) continue;
    for (double& p : next) p /= d;
    out.push_back({d, static_cast<std::uint32_t>(grid.Project(next))});
  }
}

}  // namespace

GridDynamics::GridDynamics(const GameModel& model, std::shared_ptr<const SimplexGrid> grid,
                           int threads)
    : model_(std::make_shared<const GameModel>(model)), grid_(std::move(grid)) {
  if (grid_->dimension() != model.dims.nx) {
    throw std::invalid_argument("GridDynamics: grid dimension differs from num_states");
  }
  const Dims& d = model.dims;
  const std::size_t points = grid_->size();
  const std::size_t slots = points * d.nu * d.nv;
  stage_cost_.resize(slots);

  std::vector<std::vector<Successor>> per_point(points);
  std::vector<std::vector<std::size_t>> per_point_counts(points);
  ParallelFor(points, threads, [&](std::size_t i) {
    auto& succ = per_point[i];
    auto& counts = per_point_counts[i];
    for (int u = 0; u < d.nu; ++u) {
      for (int v = 0; v < d.nv; ++v) {
        stage_cost_[Slot(i, u, v)] = StageCost(model, grid_->probs(i), u, v);
        const std::size_t before = succ.size();
        ComputeSuccessors(model, *grid_, i, u, v, succ);
        counts.push_back(succ.size() - before);
      }
    }
  });

  offsets_.assign(slots + 1, 0);
  std::size_t slot = 0;
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t c : per_point_counts[i]) {
      offsets_[slot + 1] = offsets_[slot] + c;
      ++slot;
    }
    successors_.insert(successors_.end(), per_point[i].begin(), per_point[i].end());
  }
}

std::span<const GridDynamics::Successor> GridDynamics::SuccessorsAt(std::size_t i, int u,
                                                                    int v) const {
  const std::size_t s = Slot(i, u, v);
  return {successors_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]};
}

MatrixGame GridDynamics::StageMatrix(std::size_t i, std::span<const double> values,
                                     double alpha) const {
  const Dims& d = model_->dims;
  MatrixGame a = MatrixGame::Zeros(d.nu, d.nv);
  for (int u = 0; u < d.nu; ++u) {
    for (int v = 0; v < d.nv; ++v) {
      double cont = 0.0;
      for (const Successor& s : SuccessorsAt(i, u, v)) cont += s.prob * values[s.index];
      a(u, v) = StageCostAt(i, u, v) + alpha * cont;
    }
  }
  return a;
}

MatrixGame StageMatrix(const GameModel& model, const SimplexGrid& grid,
                       std::span<const double> values, double alpha, std::size_t grid_index) {
  const Dims& d = model.dims;
  MatrixGame a = MatrixGame::Zeros(d.nu, d.nv);
  std::vector<GridDynamics::Successor> succ;
  for (int u = 0; u < d.nu; ++u) {
    for (int v = 0; v < d.nv; ++v) {
      succ.clear();
      ComputeSuccessors(model, grid, grid_index, u, v, succ);
      double cont = 0.0;
      for (const auto& s : succ) cont += s.prob * values[s.index];
      a(u, v) = StageCost(model, grid.probs(grid_index), u, v) + alpha * cont;
    }
  }
  return a;
}

ValueTable ApplyOperator(const GridDynamics& dynamics, std::span<const double> values,
                         double alpha, int threads) {
  if (values.size() != dynamics.size()) throw std::invalid_argument("ApplyOperator: size mismatch");
  ValueTable out{dynamics.grid(), std::vector<double>(dynamics.size()), alpha};
  ParallelFor(dynamics.size(), threads, [&](std::size_t i) {
    out.values[i] = Solve(dynamics.StageMatrix(i, values, alpha)).value;
  });
  return out;
}

ValueIterationResult ValueIterate(const GridDynamics& dynamics, double alpha,
                                  const ValueIterationOptions& options) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  ValueIterationResult r;
  r.table = {dynamics.grid(), std::vector<double>(dynamics.size(), 0.0), alpha};
  r.residual = std::numeric_limits<double>::infinity();
  while (r.iterations < options.max_iter) {
    ValueTable next = ApplyOperator(dynamics, r.table.values, alpha, options.threads);
    double d = 0.0;
    for (std::size_t i = 0; i < next.values.size(); ++i) {
      d = std::max(d, std::abs(next.values[i] - r.table.values[i]));
    }
    r.table = std::move(next);
    ++r.iterations;
    r.residual = alpha * d / (1.0 - alpha);
    if (r.residual <= options.tol) return r;
  }
  std::ostringstream msg;
  msg << "value iteration did not reach tol " << options.tol << " within " << options.max_iter
      << " sweeps (residual " << r.residual << ")";
  throw NotConverged(msg.str(), std::move(r));
}

ValueIterationResult ValueIterate(const GameModel& model, std::shared_ptr<const SimplexGrid> grid,
                                  double alpha, const ValueIterationOptions& options) {
  GridDynamics dynamics(model, std::move(grid), options.threads);
  return ValueIterate(dynamics, alpha, options);
}

StrategyTable ExtractStrategies(const GridDynamics& dynamics, std::span<const double> values,
                                double alpha, int threads) {
  StrategyTable t;
  t.grid = dynamics.grid();
  t.row.resize(dynamics.size());
  t.col.resize(dynamics.size());
  ParallelFor(dynamics.size(), threads, [&](std::size_t i) {
    GameSolution s = Solve(dynamics.StageMatrix(i, values, alpha));
    t.row[i] = std::move(s.row);
    t.col[i] = std::move(s.col);
  });
  return t;
}

DiscountedSolution SolveDiscounted(const GridDynamics& dynamics, double alpha,
                                   const ValueIterationOptions& options) {
  DiscountedSolution s;
  s.vi = ValueIterate(dynamics, alpha, options);
  s.strategies = ExtractStrategies(dynamics, s.vi.table.values, alpha, options.threads);
  return s;
}

void WriteSolution(std::ostream& os, const SolutionFile& s) {
  const SimplexGrid& grid = *s.values.grid;
  os.precision(17);
  os << "# posglab solution table\n";
  os << "model " << s.model_name << "\n";
  os << "nx " << s.dims.nx << "\n";
  os << "nu " << s.dims.nu << "\n";
  os << "nv " << s.dims.nv << "\n";
  os << "m " << grid.resolution() << "\n";
  os << "alpha " << s.alpha << "\n";
  os << "residual " << s.residual << "\n";
  os << "iterations " << s.iterations << "\n";
  os << "points " << grid.size() << "\n";
  os << "# k[0.." << s.dims.nx << ") value row[0.." << s.dims.nu << ") col[0.." << s.dims.nv
     << ")\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int k : grid.coords(i)) os << k << " ";
    os << s.values.values[i];
    for (double p : s.strategies.row[i].probs) os << " " << p;
    for (double p : s.strategies.col[i].probs) os << " " << p;
    os << "\n";
  }
}

SolutionFile ReadSolution(std::istream& is) {
  std::map<std::string, std::string> header;
  const char* keys[] = {"model", "nx", "nu", "nv", "m", "alpha", "residual", "iterations", "points"};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("solution table line " + std::to_string(line_no) + ": " + msg);
  };
  while (header.size() < std::size(keys) && std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key, value;
    ls >> key >> value;
    if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
      fail("unexpected header key \"" + key + "\"");
    }
    header[key] = value;
  }
  if (header.size() < std::size(keys)) fail("incomplete header");

  SolutionFile s;
  try {
    s.model_name = header["model"];
    s.dims.nx = std::stoi(header["nx"]);
    s.dims.nu = std::stoi(header["nu"]);
    s.dims.nv = std::stoi(header["nv"]);
    s.resolution = std::stoi(header["m"]);
    s.alpha = std::stod(header["alpha"]);
    s.residual = std::stod(header["residual"]);
    s.iterations = std::stoi(header["iterations"]);
  } catch (const std::exception&) {
    fail("malformed header value");
  }
  auto grid = std::make_shared<const SimplexGrid>(SimplexGrid::Build(s.dims.nx, s.resolution));
  if (std::to_string(grid->size()) != header["points"]) fail("point count does not match grid");
  s.values = {grid, std::vector<double>(grid->size()), s.alpha};
  s.strategies.grid = grid;
  s.strategies.row.assign(grid->size(), {});
  s.strategies.col.assign(grid->size(), {});

  std::size_t read = 0;
  std::vector<int> k(s.dims.nx);
  while (read < grid->size() && std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    for (int& c : k) ls >> c;
    if (!ls) fail("bad grid coordinates");
    int total = 0;
    for (int c : k) {
      if (c < 0) fail("negative grid coordinate");
      total += c;
    }
    if (total != s.resolution) fail("grid coordinates do not sum to m");
    const std::size_t idx = grid->IndexOf(k);
    if (idx != read) fail("grid points out of order");
    ls >> s.values.values[idx];
    auto& row = s.strategies.row[idx].probs;
    auto& col = s.strategies.col[idx].probs;
    row.resize(s.dims.nu);
    col.resize(s.dims.nv);
    for (double& p : row) ls >> p;
    for (double& p : col) ls >> p;
    if (!ls) fail("expected value and strategies");
    ++read;
  }
  if (read != grid->size()) fail("table truncated");
  return s;
}

SolutionFile LoadSolution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return ReadSolution(in);
}

}  // namespace posglab
