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

#include "posglab/strategy.h"

#include <stdexcept>
#include <utility>

#include "posglab/filter.h"

namespace posglab {

Strategy::Strategy(Kind kind, Side side, int num_actions, std::string name)
    : kind_(kind), side_(side), name_(std::move(name)) {
  if (num_actions < 1) throw std::invalid_argument("Strategy: needs at least one action");
  for (int a = 0; a < num_actions; ++a) pure_.push_back(MixedAction::PointMass(num_actions, a));
}

Strategy Strategy::GridTable(Side side, std::shared_ptr<const StrategyTable> table) {
  if (!table || table->row.empty()) throw std::invalid_argument("GridTable: empty table");
  const int n = side == Side::kRow ? table->row[0].size() : table->col[0].size();
  Strategy s(Kind::kGridTable, side, n, "table");
  s.table_ = std::move(table);
  return s;
}

Strategy Strategy::UniformRandom(Side side, int num_actions) {
  Strategy s(Kind::kUniformRandom, side, num_actions, "uniform");
  s.fixed_ = MixedAction::Uniform(num_actions);
  return s;
}

Strategy Strategy::FixedMixed(Side side, MixedAction action, std::string name) {
  if (!action.IsValid()) throw std::invalid_argument("FixedMixed: not a probability vector");
  if (name.empty()) {
    name = "fixed";
    for (int a = 0; a < action.size(); ++a) {
      if (action[a] == 1.0) name = "pure" + std::to_string(a);
    }
  }
  Strategy s(Kind::kFixedMixed, side, action.size(), std::move(name));
  s.fixed_ = std::move(action);
  return s;
}

Strategy Strategy::MyopicGreedy(Side side, std::shared_ptr<const StrategyTable> announced) {
  if (!announced || announced->row.empty()) throw std::invalid_argument("MyopicGreedy: empty table");
  const int n = side == Side::kRow ? announced->row[0].size() : announced->col[0].size();
  Strategy s(Kind::kMyopicGreedy, side, n, "myopic_greedy");
  s.table_ = std::move(announced);
  return s;
}

const MixedAction& Strategy::Act(const GameModel& model, std::span<const double> psi) const {
  switch (kind_) {
    case Kind::kGridTable:
      return side_ == Side::kRow ? table_->RowAt(psi) : table_->ColAt(psi);
    case Kind::kUniformRandom:
    case Kind::kFixedMixed:
      return fixed_;
    case Kind::kMyopicGreedy: {
      const Dims& d = model.dims;
      int best = 0;
      double best_value = 0.0;
      if (side_ == Side::kRow) {
        const MixedAction& opp = table_->ColAt(psi);
        for (int u = 0; u < d.nu; ++u) {
          double s = 0.0;
          for (int v = 0; v < d.nv; ++v) s += StageCost(model, psi, u, v) * opp[v];
          if (u == 0 || s > best_value) {
            best = u;
            best_value = s;
          }
        }
      } else {
        const MixedAction& opp = table_->RowAt(psi);
        for (int v = 0; v < d.nv; ++v) {
          double s = 0.0;
          for (int u = 0; u < d.nu; ++u) s += opp[u] * StageCost(model, psi, u, v);
          if (v == 0 || s < best_value) {
            best = v;
            best_value = s;
          }
        }
      }
      return pure_[best];
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace posglab
