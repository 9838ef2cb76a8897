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

#ifndef POSGLAB_STRATEGY_H_
#define POSGLAB_STRATEGY_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "posglab/matgame.h"
#include "posglab/model.h"
#include "posglab/shapley.h"

namespace posglab {

// A stationary belief-based strategy for one player. Side::kRow is player 1
// (maximizer), Side::kCol player 2 (minimizer).
class Strategy {
 public:
  enum class Kind { kGridTable, kUniformRandom, kMyopicGreedy, kFixedMixed };

  // Plays the table's mixed action at the grid projection of the belief.
  static Strategy GridTable(Side side, std::shared_ptr<const StrategyTable> table);
  static Strategy UniformRandom(Side side, int num_actions);
  static Strategy FixedMixed(Side side, MixedAction action, std::string name = "");
  // Pure best response, in the one-stage game c~(psi, ., .), to the mixed
  // action the opponent's table announces at the same belief.
  static Strategy MyopicGreedy(Side side, std::shared_ptr<const StrategyTable> announced);

  Kind kind() const { return kind_; }
  Side side() const { return side_; }
  const std::string& name() const { return name_; }
  int num_actions() const { return static_cast<int>(pure_.size()); }

  const MixedAction& Act(const GameModel& model, std::span<const double> psi) const;

 private:
  Strategy(Kind kind, Side side, int num_actions, std::string name);

  Kind kind_;
  Side side_;
  std::string name_;
  std::shared_ptr<const StrategyTable> table_;
  MixedAction fixed_;
  std::vector<MixedAction> pure_;
};

}  // namespace posglab

#endif  // POSGLAB_STRATEGY_H_
