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

#include "rankgame/config.hpp"

#include <doctest.h>

#include "rankgame/errors.hpp"
#include "rankgame/reports.hpp"
#include "test_support.hpp"

using namespace rankgame;
using namespace rankgame::testing;

namespace {

const char* kBasicConfig = R"({
  "players": [
    {"id": "strong", "theta": 2.0, "score": {"alpha": 0.0, "beta": 0.5, "lower": 0.0, "upper": 1.0}},
    {"id": "weak", "theta": 1.0, "score": {"alpha": -1.0, "beta": 0.5, "lower": 0.0, "upper": 1.0}}
  ],
  "cost": {"family": "linear", "kappa": 1.0},
  "rewards": {"scheme": "winner_take_all", "reward": 10.0},
  "tbt": 0.0
})";

}  // namespace

TEST_CASE("a basic config round-trips semantically") {
  const GameConfig config = load_game_config(kBasicConfig);
  CHECK(config.player_ids == std::vector<std::string>{"strong", "weak"});
  CHECK(config.game.num_players() == 2);
  CHECK(config.game.tbt() == 0.0);
  CHECK(config.game.rewards().values() == std::vector<double>{10.0, 0.0});
  CHECK_FALSE(config.designer.has_value());

  const std::string serialized = save_game_config(config);
  const GameConfig reparsed = load_game_config(serialized);
  CHECK(reparsed.player_ids == config.player_ids);
  CHECK(reparsed.game.capabilities().thetas() ==
        config.game.capabilities().thetas());
  CHECK(reparsed.game.rewards().values() == config.game.rewards().values());
  CHECK(reparsed.game.tbt() == config.game.tbt());
  for (int i = 0; i < 2; ++i) {
    CHECK(reparsed.game.scores().params(i).alpha ==
          config.game.scores().params(i).alpha);
    CHECK(reparsed.game.scores().params(i).beta ==
          config.game.scores().params(i).beta);
  }
  // And the serialized form itself is a fixed point.
  CHECK(save_game_config(reparsed) == serialized);
}

TEST_CASE("unknown fields are rejected unless lenient") {
  std::string text = kBasicConfig;
  text.insert(text.rfind('}'), ", \"comment\": \"hi\"");
  CHECK_THROWS_AS(load_game_config(text), ParseError);
  CHECK_NOTHROW(load_game_config(text, true));
  try {
    load_game_config(text);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("comment") != std::string::npos);
  }
}

TEST_CASE("field-addressed config errors") {
  std::string bad_beta = kBasicConfig;
  bad_beta.replace(bad_beta.find("\"beta\": 0.5"), 11, "\"beta\": -1.0");
  try {
    load_game_config(bad_beta);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("players[0].score") !=
          std::string::npos);
  }

  std::string tied = kBasicConfig;
  tied.replace(tied.find("\"theta\": 1.0"), 12, "\"theta\": 2.0");
  CHECK_THROWS_AS(load_game_config(tied), ParseError);

  CHECK_THROWS_AS(load_game_config("not json"), ParseError);
  CHECK_THROWS_AS(load_game_config("[]"), ParseError);
  CHECK_THROWS_AS(load_game_config("{}"), ParseError);
}

TEST_CASE("reward scheme and cost family variants parse") {
  std::string text = R"({
    "players": [
      {"id": "a", "theta": 3.0, "score": {"alpha": 1.0, "beta": 0.6, "lower": 0.0, "upper": 0.95}},
      {"id": "b", "theta": 2.0, "score": {"alpha": 0.3, "beta": 0.5, "lower": 0.0, "upper": 0.95}},
      {"id": "c", "theta": 1.0, "score": {"alpha": 0.0, "beta": 0.4, "lower": 0.0, "upper": 0.95}}
    ],
    "cost": {"family": "piecewise", "knots": [5.0], "slopes": [1.0, 3.0]},
    "rewards": {"scheme": "decay", "reward": 8.0, "ratio": 0.5},
    "tbt": 1.5,
    "designer": {"ranking_reward": 100.0, "tbt_cost": {"family": "power", "a": 1.0, "p": 2.0}}
  })";
  const GameConfig config = load_game_config(text);
  CHECK(config.game.rewards().values() == std::vector<double>{8.0, 4.0, 2.0});
  CHECK(config.game.cost().is_piecewise());
  REQUIRE(config.designer.has_value());
  CHECK(config.designer->ranking_reward == 100.0);
  CHECK(config.designer->tbt_cost.is_power());

  const GameConfig reparsed = load_game_config(save_game_config(config));
  CHECK(reparsed.game.cost().as_piecewise().slopes ==
        config.game.cost().as_piecewise().slopes);
  REQUIRE(reparsed.designer.has_value());
  CHECK(reparsed.designer->tbt_cost.as_power().p == 2.0);
}

TEST_CASE("theta vectors project through the weights") {
  const char* text = R"({
    "players": [
      {"id": "a", "theta_vector": [2.0, 4.0], "score": {"alpha": 0.0, "beta": 0.5, "lower": 0.0, "upper": 1.0}},
      {"id": "b", "theta": 1.0, "score": {"alpha": -1.0, "beta": 0.5, "lower": 0.0, "upper": 1.0}}
    ],
    "weights": [0.5, 0.5],
    "cost": {"family": "linear", "kappa": 1.0},
    "rewards": {"scheme": "top_k", "k": 1, "reward": 5.0},
    "tbt": 0.0
  })";
  const GameConfig config = load_game_config(text);
  CHECK(config.game.capabilities().theta(0) == 3.0);

  // Missing weights makes theta_vector unusable.
  std::string no_weights = text;
  no_weights.erase(no_weights.find("\"weights\": [0.5, 0.5],"), 23);
  CHECK_THROWS_AS(load_game_config(no_weights), ParseError);
}

TEST_CASE("trajectory csv parses grouped per-model samples") {
  const std::string csv =
      "# fixture\n"
      "model_id,steps,score\n"
      "b,0,0.30\n"
      "a,0,0.50\n"
      "a,10,0.60\n"
      "# interleaved comment\n"
      "a,100,0.70\n"
      "b,10,0.40\n"
      "b,100,0.55\n";
  const TrajectoryDataset dataset = parse_trajectory_csv(csv);
  REQUIRE(dataset.models.size() == 2);
  CHECK(dataset.models[0].id == "b");  // first-appearance order
  CHECK(dataset.models[0].samples.size() == 3);
  CHECK(dataset.models[1].samples.size() == 3);
  CHECK(dataset.models[1].samples[1].effort == 10.0);
}

TEST_CASE("trajectory csv errors carry line numbers") {
  CHECK_THROWS_AS(parse_trajectory_csv(""), DataError);
  CHECK_THROWS_AS(parse_trajectory_csv("model_id,steps,score\n"), DataError);
  CHECK_THROWS_AS(parse_trajectory_csv("wrong,header\n"), ParseError);

  const std::string bad_score =
      "model_id,steps,score\n"
      "a,0,0.5\n"
      "a,10,1.2\n"
      "a,20,0.7\n";
  try {
    parse_trajectory_csv(bad_score);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.rows() == std::vector<int>{3});
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }

  const std::string bad_steps =
      "model_id,steps,score\n"
      "a,-1,0.5\n";
  CHECK_THROWS_AS(parse_trajectory_csv(bad_steps), DataError);

  const std::string too_few =
      "model_id,steps,score\n"
      "a,0,0.5\n"
      "a,10,0.6\n";
  CHECK_THROWS_AS(parse_trajectory_csv(too_few), DataError);
}

TEST_CASE("report numbers carry twelve significant digits") {
  CHECK(format_number(6.389056098930650) == "6.38905609893");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(10.0) == "10");
  CHECK(format_number(-1.5) == "-1.5");
}
