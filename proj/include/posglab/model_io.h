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

#ifndef POSGLAB_MODEL_IO_H_
#define POSGLAB_MODEL_IO_H_

#include <string>
#include <string_view>

#include "posglab/model.h"

namespace posglab {

// Model files are JSON documents:
//
//   {
//     "name": "CANON2",
//     "num_states": 2, "num_obs": 2, "num_actions_p1": 2, "num_actions_p2": 2,
//     "kernel": [...],          // nested [x][u][v][z][y]
//     "cost": [...],            // nested [x][u][v]
//     "initial_belief": [...],
//     "lyapunov": {"V": [...], "h": [...], "K": [0, 1], "drift_c": 1.0}
//   }
//
// `lyapunov` is optional. Numbers are written in shortest round-trip form, so
// ParseModel(SerializeModel(m)) reproduces every entry bit for bit.

// Parses and validates a model. Throws ParseError (with line/field
// diagnostics) on malformed input and ValidationError if the model violates
// its invariants. Rows are renormalized after validation.
GameModel ParseModel(std::string_view text, const std::string& source = "<string>");

// Skips validation and normalization; used to inspect broken files.
GameModel ParseModelUnchecked(std::string_view text, const std::string& source = "<string>");

std::string SerializeModel(const GameModel& model);

GameModel LoadModel(const std::string& path);
void SaveModel(const GameModel& model, const std::string& path);

// Reads a file into memory; throws ParseError if it cannot be opened.
std::string ReadTextFile(const std::string& path);

}  // namespace posglab

#endif  // POSGLAB_MODEL_IO_H_
