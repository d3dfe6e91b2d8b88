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

#include "rankgame/equilibrium.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include <doctest.h>

#include "rankgame/errors.hpp"
#include "test_support.hpp"

using namespace rankgame;
using namespace rankgame::testing;

namespace {

double grid_max_for(const GameInstance& game) {
  const double span =
      game.rewards().values().front() - game.rewards().values().back();
  return game.cost().inverse(span) + 0.05;
}

// Independent check used for the zero-effort examples: scan a fine effort
// grid for any unilateral deviation from the all-zero profile that beats
// staying put.
bool grid_confirms_all_zero(const GameInstance& game, double step,
                            double max_effort) {
  const auto zeros = EffortProfile::zeros(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    const double base = developer_utility(game, zeros, i);
    for (double e = step; e <= max_effort; e += step) {
      auto efforts = zeros.efforts();
      efforts[static_cast<size_t>(i)] = e;
      if (developer_utility(game, EffortProfile(efforts), i) > base + 1e-9) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("just-overtake effort of the canonical two-player game") {
  const auto game = two_player_wta(10.0);
  const auto effort = just_overtake_effort(game, 2);
  REQUIRE(effort.has_value());
  CHECK(close_rel(*effort, std::expm1(2.0), 1e-12));

  // Against the bisection oracle on the weaker player's curve.
  const auto oracle =
      bisection_required_effort(game.scores().params(1), 0.5);
  REQUIRE(oracle.has_value());
  CHECK(close_rel(*effort, *oracle, 1e-9));

  CHECK_THROWS_AS(just_overtake_effort(game, 1), ValidationError);
  CHECK_THROWS_AS(just_overtake_effort(game, 3), ValidationError);
}

TEST_CASE("just-overtake clamps at zero once curves have crossed") {
  // Non-regular pair: the weaker player's curve overtakes at high effort.
  // Constructed at tbt = 0 (where baselines are still ordered); probing a
  // far TbT level finds the weaker baseline already ahead.
  std::vector<ScoreParams> params{{0.5, 0.1, 0.0, 1.0}, {0.4, 1.0, 0.0, 1.0}};
  const GameInstance game(CapabilityProfile({2.0, 1.0}), ScoreModel(params),
                          CostModel::linear(1.0),
                          RewardScheme::winner_take_all(2, 1.0), 0.0);
  const auto at_far_tbt = just_overtake_effort(game, 2, 5.0);
  REQUIRE(at_far_tbt.has_value());
  CHECK(*at_far_tbt == 0.0);
}

TEST_CASE("just-overtake reports saturation as unreachable") {
  std::vector<ScoreParams> params{{1.0, 0.5, 0.0, 0.9}, {0.0, 0.5, 0.0, 0.6}};
  const GameInstance game(CapabilityProfile({2.0, 1.0}), ScoreModel(params),
                          CostModel::linear(1.0),
                          RewardScheme::winner_take_all(2, 1.0), 0.0);
  // Leader baseline 0.9 * sigma(1) ~ 0.658 > 0.6 = follower saturation.
  CHECK_FALSE(just_overtake_effort(game, 2).has_value());
}

TEST_CASE("zero-effort equilibrium condition across reward gaps") {
  // Equal rewards: every gap is zero, any cost satisfies the condition.
  std::vector<ScoreParams> params{{0.0, 0.5, 0.0, 1.0}, {-1.0, 0.5, 0.0, 1.0}};
  const GameInstance flat(CapabilityProfile({2.0, 1.0}), ScoreModel(params),
                          CostModel::linear(1.0),
                          RewardScheme({3.0, 3.0}), 0.0);
  CHECK(zero_effort_pne_check(flat).status == PneStatus::kAllZeroPne);
  CHECK(grid_confirms_all_zero(flat, 0.01, 20.0));

  // Winner-take-all 10: cost 6.389 < 10, profitable deviation exists.
  const auto nopne = zero_effort_pne_check(two_player_wta(10.0));
  CHECK(nopne.status == PneStatus::kNoPne);
  REQUIRE(nopne.records.size() == 1);
  CHECK(nopne.records[0].rank == 2);
  CHECK(nopne.records[0].profitable);
  CHECK_FALSE(grid_confirms_all_zero(two_player_wta(10.0), 0.01, 20.0));

  // Winner-take-all 5: cost 6.389 >= 5, stable.
  const auto allzero = zero_effort_pne_check(two_player_wta(5.0));
  CHECK(allzero.status == PneStatus::kAllZeroPne);
  CHECK_FALSE(allzero.records[0].profitable);
  CHECK(grid_confirms_all_zero(two_player_wta(5.0), 0.01, 20.0));
}

TEST_CASE("marginal conditions are flagged") {
  // Reward gap pinned to the overtaking cost within the marginal band.
  const double cost = std::expm1(2.0);
  const auto game = two_player_wta(cost + 1e-8);
  const auto verdict = zero_effort_pne_check(game);
  CHECK(verdict.records[0].marginal);
  CHECK(verdict.any_marginal());
  CHECK(verdict.min_margin() <= 1e-7);
}

TEST_CASE("pne_verdict gates on the sampled regularity check") {
  // Crossing curves fail C1, so the theorem's hypotheses are unverified.
  std::vector<ScoreParams> params{{0.5, 0.1, 0.0, 1.0}, {0.4, 1.0, 0.0, 1.0}};
  const GameInstance crossing(CapabilityProfile({2.0, 1.0}),
                              ScoreModel(params), CostModel::linear(1.0),
                              RewardScheme::winner_take_all(2, 1.0), 0.0);
  CHECK_THROWS_AS(pne_verdict(crossing), PreconditionError);
  // The explicit override acknowledges the caller's own verification.
  CHECK_NOTHROW(pne_verdict(crossing, true));

  CHECK(pne_verdict(two_player_wta(10.0)).status == PneStatus::kNoPne);
  CHECK(pne_verdict(two_player_wta(5.0)).status == PneStatus::kAllZeroPne);
}

TEST_CASE("brute force finds exactly the all-zero grid equilibrium") {
  const auto stable = two_player_wta(5.0);
  const auto report = brute_force_grid_verdict(stable, 0.01,
                                               grid_max_for(stable));
  CHECK(report.grid_max_sufficient);
  CHECK_FALSE(report.inconclusive);
  REQUIRE(report.found_any());
  CHECK(report.all_zero_only());

  const auto unstable = two_player_wta(10.0);
  const auto none = brute_force_grid_verdict(unstable, 0.01,
                                             grid_max_for(unstable));
  CHECK_FALSE(none.found_any());
  CHECK_FALSE(none.inconclusive);
}

TEST_CASE("brute force accepts the all-zero profile under flat rewards") {
  std::vector<ScoreParams> params{{0.0, 0.5, 0.0, 1.0}, {-1.0, 0.5, 0.0, 1.0}};
  const GameInstance flat(CapabilityProfile({2.0, 1.0}), ScoreModel(params),
                          CostModel::linear(1.0), RewardScheme({2.0, 2.0}),
                          0.0);
  const auto report = brute_force_grid_verdict(flat, 0.05, 1.0);
  REQUIRE(report.found_any());
  CHECK(report.all_zero_only());
}

TEST_CASE("brute force validates its grid") {
  const auto game = two_player_wta(5.0);
  CHECK_THROWS_AS(brute_force_grid_verdict(game, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(brute_force_grid_verdict(game, 0.5, 0.1), ValidationError);
}

TEST_CASE("brute force reports do not depend on the thread count") {
  std::mt19937 rng(13579);
  const auto game = random_regular_instance(rng, 3);
  BruteForceOptions sequential;
  sequential.grid_step = 0.01;
  sequential.grid_max = grid_max_for(game);
  sequential.threads = 1;
  BruteForceOptions parallel = sequential;
  parallel.threads = 4;
  const auto a = brute_force_grid_verdict(game, sequential);
  const auto b = brute_force_grid_verdict(game, parallel);
  CHECK(a.pne_profiles == b.pne_profiles);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.cost_resolution == b.cost_resolution);

  // RANKGAME_THREADS caps auto-selected parallelism without changing the
  // report.
  setenv("RANKGAME_THREADS", "1", 1);
  BruteForceOptions capped = sequential;
  capped.threads = 0;
  const auto c = brute_force_grid_verdict(game, capped);
  unsetenv("RANKGAME_THREADS");
  CHECK(c.pne_profiles == a.pne_profiles);
}

TEST_CASE("analytic verdicts agree with the exhaustive oracle") {
  std::mt19937 rng(314159);
  int checked = 0;
  int nopne_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto game = random_regular_instance(rng, n);
    const auto verdict = zero_effort_pne_check(game);
    const auto oracle =
        brute_force_grid_verdict(game, 0.01, grid_max_for(game));
    if (verdict.min_margin() <= oracle.cost_resolution) continue;  // knife edge
    ++checked;
    if (verdict.status == PneStatus::kAllZeroPne) {
      REQUIRE(oracle.found_any());
      CHECK(oracle.all_zero_only());
    } else {
      ++nopne_seen;
      CHECK_FALSE(oracle.found_any());
    }
    // Order preservation at every grid equilibrium found.
    for (const auto& profile : oracle.pne_profiles) {
      CHECK(verify_order_preservation(game, EffortProfile(profile)).preserved);
    }
  }
  CHECK(checked >= 50);
  CHECK(nopne_seen >= 5);
}

TEST_CASE("NoPNE witnesses are executable profitable deviations") {
  std::mt19937 rng(2718);
  int witnesses = 0;
  for (int trial = 0; trial < 120 && witnesses < 25; ++trial) {
    const auto game = random_regular_instance(rng, 2 + static_cast<int>(rng() % 2));
    const auto verdict = zero_effort_pne_check(game);
    if (verdict.status != PneStatus::kNoPne) continue;
    for (const auto& rec : verdict.records) {
      if (!rec.profitable || rec.marginal) continue;
      ++witnesses;
      const int player = rec.rank - 1;
      auto efforts = EffortProfile::zeros(game.num_players()).efforts();
      // The infimum alone only ties; one grid step beyond overtakes.
      efforts[static_cast<size_t>(player)] = *rec.effort_required + 0.01;
      const double deviated =
          developer_utility(game, EffortProfile(efforts), player);
      const double staying = developer_utility(
          game, EffortProfile::zeros(game.num_players()), player);
      CHECK(deviated > staying);
    }
  }
  CHECK(witnesses >= 10);
}

TEST_CASE("dynamics sit still at a stable all-zero profile") {
  const auto game = two_player_wta(5.0);
  const auto trace = best_response_dynamics(
      game, EffortProfile::zeros(2), MoverRule::kRoundRobin, 0.01, 1000);
  CHECK(trace.outcome == DynamicsOutcome::kFixedPoint);
  CHECK(trace.steps.empty());
  CHECK(trace.final_profile == std::vector<double>{0.0, 0.0});
}

TEST_CASE("dynamics shed useless effort back to all-zero") {
  const auto game = two_player_wta(5.0);
  for (const auto rule : {MoverRule::kRoundRobin, MoverRule::kBestGainFirst}) {
    const auto trace = best_response_dynamics(
        game, EffortProfile({0.5, 0.2}), rule, 0.01, 1000);
    CHECK(trace.outcome == DynamicsOutcome::kFixedPoint);
    CHECK(trace.final_profile == std::vector<double>{0.0, 0.0});
    for (const auto& step : trace.steps) {
      CHECK(step.utility_gain > 0.0);
    }
  }
}

TEST_CASE("dynamics never settle in a NoPNE game") {
  const auto game = two_player_wta(10.0);
  for (const auto rule : {MoverRule::kRoundRobin, MoverRule::kBestGainFirst}) {
    const auto trace = best_response_dynamics(
        game, EffortProfile::zeros(2), rule, 0.01, 10000);
    CHECK(trace.outcome != DynamicsOutcome::kFixedPoint);
    for (const auto& step : trace.steps) {
      CHECK(step.utility_gain > 0.0);
    }
  }
}

TEST_CASE("cycle reporting carries the period and first return") {
  const auto game = two_player_wta(10.0);
  const auto trace = best_response_dynamics(
      game, EffortProfile::zeros(2), MoverRule::kRoundRobin, 0.01, 10000);
  REQUIRE(trace.outcome == DynamicsOutcome::kCycleDetected);
  CHECK(trace.cycle_period > 0);
  CHECK(trace.first_return_step >= trace.cycle_period);
  CHECK(trace.first_return_step <= static_cast<int>(trace.steps.size()));
}

TEST_CASE("dynamics validate their arguments") {
  const auto game = two_player_wta(5.0);
  CHECK_THROWS_AS(best_response_dynamics(game, EffortProfile::zeros(2),
                                         MoverRule::kRoundRobin, -0.1, 100),
                  ValidationError);
  CHECK_THROWS_AS(best_response_dynamics(game, EffortProfile::zeros(2),
                                         MoverRule::kRoundRobin, 0.01, 0),
                  ValidationError);
  CHECK_THROWS_AS(best_response_dynamics(game, EffortProfile::zeros(3),
                                         MoverRule::kRoundRobin, 0.01, 100),
                  ValidationError);
}

TEST_CASE("order preservation") {
  const auto game = two_player_wta(10.0);
  CHECK(verify_order_preservation(game, EffortProfile::zeros(2)).preserved);

  const auto overtake = just_overtake_effort(game, 2);
  REQUIRE(overtake.has_value());
  const auto check = verify_order_preservation(
      game, EffortProfile({0.0, *overtake + 0.1}));
  CHECK_FALSE(check.preserved);
  CHECK(check.higher == 0);
  CHECK(check.lower == 1);
}
