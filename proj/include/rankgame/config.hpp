// Copyright 2026 The rankgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANKGAME_CONFIG_HPP
#define RANKGAME_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "rankgame/fitting.hpp"
#include "rankgame/game.hpp"

namespace rankgame {

/// A parsed game configuration: the game itself, player display ids, and
/// optional designer preferences.
struct GameConfig {
  std::vector<std::string> player_ids;
  GameInstance game;
  std::optional<DesignerPrefs> designer;
};

/// Parses a UTF-8 JSON game config. Unknown fields are rejected unless
/// lenient; value errors carry field-addressed messages. Construction
/// invariants of all referenced modules are enforced.
GameConfig load_game_config(const std::string& json_text, bool lenient = false);

/// Serializes a config in normalized form (explicit reward values,
/// projected thetas). Deterministic: 12 significant digits, fixed key
/// order.
std::string save_game_config(const GameConfig& config);

/// Parses trajectory CSV with the header `model_id,steps,score`. Lines
/// starting with '#' are comments; rows need not be sorted. Malformed rows
/// raise DataError carrying 1-based line numbers; an input without data
/// rows raises DataError("no rows").
TrajectoryDataset parse_trajectory_csv(const std::string& csv_text);

}  // namespace rankgame

#endif  // RANKGAME_CONFIG_HPP
