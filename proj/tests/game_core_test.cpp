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

#include "rankgame/game.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "rankgame/equilibrium.hpp"
#include "rankgame/errors.hpp"
#include "test_support.hpp"

using namespace rankgame;
using namespace rankgame::testing;

TEST_CASE("capability profile enforces strict descending positive thetas") {
  CHECK_THROWS_AS(CapabilityProfile({3.0}), ValidationError);
  CHECK_THROWS_AS(CapabilityProfile({3.0, 3.0}), ValidationError);
  CHECK_THROWS_AS(CapabilityProfile({1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(CapabilityProfile({2.0, 0.0}), ValidationError);
  const CapabilityProfile caps({3.0, 2.0, 1.0});
  CHECK(caps.size() == 3);
  CHECK(caps.theta(1) == 2.0);
}

TEST_CASE("capability projection") {
  const std::vector<double> basis{0.0, 1.0, 0.0};
  const std::vector<double> vec{2.0, 4.0, 6.0};
  CHECK(project_capability(basis, vec) == 4.0);
  const std::vector<double> w{0.5, 0.5};
  const std::vector<double> v{2.0, 4.0};
  CHECK(project_capability(w, v) == 3.0);
  const std::vector<double> orth{1.0, 0.0};
  const std::vector<double> vy{0.0, 5.0};
  CHECK_THROWS_AS(project_capability(orth, vy), ValidationError);
  CHECK_THROWS_AS(project_capability(w, basis), ValidationError);
}

TEST_CASE("reward schemes") {
  const auto wta = RewardScheme::winner_take_all(3, 10.0);
  CHECK(wta.values() == std::vector<double>{10.0, 0.0, 0.0});
  const auto topk = RewardScheme::top_k(4, 2, 5.0);
  CHECK(topk.values() == std::vector<double>{5.0, 5.0, 0.0, 0.0});
  const auto decay = RewardScheme::geometric_decay(3, 8.0, 0.5);
  CHECK(decay.values() == std::vector<double>{8.0, 4.0, 2.0});
  CHECK(decay.gap(2) == 4.0);
  CHECK_THROWS_AS(RewardScheme({1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(RewardScheme({1.0, -0.5}), ValidationError);
  CHECK_THROWS_AS(RewardScheme::top_k(3, 4, 1.0), ValidationError);
  CHECK_THROWS_AS(RewardScheme::geometric_decay(3, 1.0, 1.5), ValidationError);
}

TEST_CASE("game construction validates shapes and baseline order") {
  std::vector<ScoreParams> params{{0.0, 0.5, 0.0, 1.0}, {-1.0, 0.5, 0.0, 1.0}};
  CHECK_THROWS_AS(GameInstance(CapabilityProfile({2.0, 1.0}),
                               ScoreModel({params[0]}),
                               CostModel::linear(1.0),
                               RewardScheme::winner_take_all(2, 1.0), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(GameInstance(CapabilityProfile({2.0, 1.0}),
                               ScoreModel(params), CostModel::linear(1.0),
                               RewardScheme::winner_take_all(3, 1.0), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(GameInstance(CapabilityProfile({2.0, 1.0}),
                               ScoreModel(params), CostModel::linear(1.0),
                               RewardScheme::winner_take_all(2, 1.0), -1.0),
                  ValidationError);
  // Baselines must strictly decrease: swap the curves to break it.
  std::vector<ScoreParams> swapped{params[1], params[0]};
  CHECK_THROWS_AS(GameInstance(CapabilityProfile({2.0, 1.0}),
                               ScoreModel(swapped), CostModel::linear(1.0),
                               RewardScheme::winner_take_all(2, 1.0), 0.0),
                  ValidationError);
}

TEST_CASE("realized scores compose the score curve with tbt") {
  const auto game = two_player_wta(10.0, 0.0);
  const auto zeros = EffortProfile::zeros(2);
  const auto baseline = realized_scores(game, zeros);
  CHECK(baseline[0] == 0.5);
  CHECK(baseline[0] > baseline[1]);
  CHECK(baseline[0] == game.baseline_score(0));

  // The weaker player slightly past its just-overtake effort wins.
  const auto overtake = just_overtake_effort(game, 2);
  REQUIRE(overtake.has_value());
  const EffortProfile push({0.0, *overtake + 0.1});
  const auto pushed = realized_scores(game, push);
  CHECK(pushed[1] > baseline[0]);

  CHECK_THROWS_AS(realized_scores(game, EffortProfile::zeros(3)),
                  ValidationError);

  const auto shifted = game.with_tbt(2.0);
  const auto shifted_scores = realized_scores(shifted, zeros);
  CHECK(shifted_scores[0] == eval_score(game.scores().params(0), 2.0));
}

TEST_CASE("rank examples") {
  const CapabilityProfile caps({3.0, 2.0, 1.0});
  CHECK(rank_scores(std::vector<double>{0.9, 0.5, 0.3}, caps) ==
        std::vector<int>{1, 2, 3});
  // Hand-applied counting definition for mixed scores.
  CHECK(rank_scores(std::vector<double>{0.3, 0.9, 0.5}, caps) ==
        std::vector<int>{3, 1, 2});
  // Exact ties resolve toward the higher capability.
  CHECK(rank_scores(std::vector<double>{0.5, 0.5, 0.2}, caps) ==
        std::vector<int>{1, 2, 3});
  CHECK(rank_scores(std::vector<double>{0.2, 0.5, 0.5}, caps) ==
        std::vector<int>{3, 1, 2});
  // A positive tolerance groups near-ties and reorders by capability.
  CHECK(rank_scores(std::vector<double>{0.50, 0.509, 0.2}, caps, 0.01) ==
        std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(rank_scores(std::vector<double>{0.1, 0.2}, caps),
                  ValidationError);
}

TEST_CASE("ranks form a permutation on random scores with duplicates") {
  std::mt19937 rng(123);
  const CapabilityProfile caps({4.0, 3.0, 2.0, 1.0});
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> scores;
    for (int i = 0; i < 4; ++i) {
      // Coarse values make exact duplicates common.
      scores.push_back(static_cast<double>(rng() % 8) / 8.0);
    }
    const auto ranks = rank_scores(scores, caps);
    std::vector<bool> seen(5, false);
    for (int r : ranks) {
      REQUIRE(r >= 1);
      REQUIRE(r <= 4);
      REQUIRE_FALSE(seen[static_cast<size_t>(r)]);
      seen[static_cast<size_t>(r)] = true;
    }
  }
}

TEST_CASE("reward does not increase when losing a score swap") {
  std::mt19937 rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    const auto scheme = RewardScheme::geometric_decay(
        4, uniform(rng, 0.5, 3.0), uniform(rng, 0.3, 0.9));
    for (int r = 2; r <= 4; ++r) {
      CHECK(scheme.reward(r) <= scheme.reward(r - 1));
      CHECK(scheme.gap(r) >= 0.0);
    }
  }
}

TEST_CASE("developer utility") {
  const auto game = two_player_wta(10.0, 0.0, 2.0);  // kappa = 2
  const auto zeros = EffortProfile::zeros(2);
  // At the all-zero profile each player collects its rank reward.
  CHECK(developer_utility(game, zeros, 0) == 10.0);
  CHECK(developer_utility(game, zeros, 1) == 0.0);

  // Overtaking at cost 2 * 6.389... = 12.778 nets 10 - 12.778.
  const auto overtake = just_overtake_effort(game, 2);
  REQUIRE(overtake.has_value());
  const EffortProfile push({0.0, *overtake + 1e-9});
  CHECK(close(developer_utility(game, push, 1), 10.0 - 2.0 * std::expm1(2.0),
              1e-6));

  // Positive effort without a rank change strictly burns utility.
  const EffortProfile wasted({0.0, 1.0});
  CHECK(developer_utility(game, wasted, 1) <
        developer_utility(game, zeros, 1));
  CHECK_THROWS_AS(developer_utility(game, zeros, 5), ValidationError);
}

TEST_CASE("designer utility") {
  const auto game = two_player_wta(10.0, 0.0);
  const DesignerPrefs prefs{100.0, CostModel::linear(1.0)};
  CHECK(designer_utility(game, EffortProfile::zeros(2), prefs) == 100.0);

  // A misordered outcome forfeits the ranking reward.
  const auto overtake = just_overtake_effort(game, 2);
  const EffortProfile push({0.0, *overtake + 0.1});
  CHECK(designer_utility(game, push, prefs) == 0.0);

  // Correct ranking at tbt 2 with linear designer cost: R - n * 2.
  std::vector<ScoreParams> params{
      {1.0, 0.5, 0.0, 1.0}, {0.0, 0.5, 0.0, 1.0}, {-1.0, 0.5, 0.0, 1.0}};
  const GameInstance trio(CapabilityProfile({3.0, 2.0, 1.0}),
                          ScoreModel(params), CostModel::linear(1.0),
                          RewardScheme::winner_take_all(3, 5.0), 2.0);
  CHECK(designer_utility(trio, EffortProfile::zeros(3), prefs) == 94.0);
}

TEST_CASE("zero-effort payoff identity on random games") {
  std::mt19937 rng(5555);
  for (int trial = 0; trial < 100; ++trial) {
    const auto game = random_regular_instance(rng, 2 + static_cast<int>(rng() % 2));
    const auto zeros = EffortProfile::zeros(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      CHECK(developer_utility(game, zeros, i) ==
            game.rewards().reward(i + 1));
    }
  }
}

TEST_CASE("cost equivalence: heterogeneous costs reparametrize away") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto game = random_regular_instance(rng, 2 + static_cast<int>(rng() % 2));
    const int n = game.num_players();
    std::vector<double> efforts, gammas;
    for (int i = 0; i < n; ++i) {
      efforts.push_back(uniform(rng, 0.0, 5.0));
      gammas.push_back(uniform(rng, 0.2, 4.0));
    }
    const EffortProfile profile(efforts);
    const auto scores = realized_scores(game, profile);
    const auto ranks = rank_scores(scores, game.capabilities());

    for (int i = 0; i < n; ++i) {
      // Heterogeneous game: developer i pays gamma_i * c(e_i).
      const double het = game.rewards().reward(ranks[static_cast<size_t>(i)]) -
                         gammas[static_cast<size_t>(i)] *
                             game.cost().eval(efforts[static_cast<size_t>(i)]);
      // Homogeneous game at the Phi-mapped profile: same scores and ranks
      // by construction, cost paid at the mapped effort.
      const double z = game.cost().reparametrize_effort(
          gammas[static_cast<size_t>(i)], efforts[static_cast<size_t>(i)]);
      const double hom =
          game.rewards().reward(ranks[static_cast<size_t>(i)]) -
          game.cost().eval(z);
      CHECK(close_rel(het, hom, 1e-9));
    }
  }
}
