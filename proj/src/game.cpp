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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rankgame/errors.hpp"

namespace rankgame {

CapabilityProfile::CapabilityProfile(std::vector<double> thetas)
    : thetas_(std::move(thetas)) {
  if (thetas_.size() < 2) {
    throw ValidationError("capabilities: need at least two players");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double t : thetas_) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw ValidationError("capabilities: thetas must be positive");
    }
    if (!(t < prev)) {
      throw ValidationError(
          "capabilities: thetas must be strictly decreasing (perturb ties)");
    }
    prev = t;
  }
}

double project_capability(std::span<const double> weights,
                          std::span<const double> theta_vec) {
  if (weights.size() != theta_vec.size() || weights.empty()) {
    throw ValidationError("capability projection: dimension mismatch");
  }
  double dot = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    dot += weights[i] * theta_vec[i];
  }
  if (!(dot > 0.0)) {
    throw ValidationError("capability projection: result must be positive");
  }
  return dot;
}

RewardScheme::RewardScheme(std::vector<double> rewards)
    : rewards_(std::move(rewards)) {
  if (rewards_.empty()) {
    throw ValidationError("rewards: empty scheme");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double r : rewards_) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ValidationError("rewards: values must be nonnegative");
    }
    if (r > prev) {
      throw ValidationError("rewards: values must be non-increasing in rank");
    }
    prev = r;
  }
}

RewardScheme RewardScheme::winner_take_all(int n, double top_reward) {
  if (n < 1) throw ValidationError("rewards: need n >= 1");
  std::vector<double> values(static_cast<size_t>(n), 0.0);
  values[0] = top_reward;
  return RewardScheme(std::move(values));
}

RewardScheme RewardScheme::top_k(int n, int k, double reward) {
  if (n < 1 || k < 1 || k > n) {
    throw ValidationError("rewards: top-k needs 1 <= k <= n");
  }
  std::vector<double> values(static_cast<size_t>(n), 0.0);
  std::fill_n(values.begin(), k, reward);
  return RewardScheme(std::move(values));
}

RewardScheme RewardScheme::geometric_decay(int n, double top_reward,
                                           double ratio) {
  if (n < 1) throw ValidationError("rewards: need n >= 1");
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ValidationError("rewards: decay ratio must lie in (0, 1]");
  }
  std::vector<double> values;
  values.reserve(static_cast<size_t>(n));
  double r = top_reward;
  for (int j = 0; j < n; ++j) {
    values.push_back(r);
    r *= ratio;
  }
  return RewardScheme(std::move(values));
}

EffortProfile::EffortProfile(std::vector<double> efforts)
    : efforts_(std::move(efforts)) {
  for (double e : efforts_) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw ValidationError("effort profile: entries must be nonnegative");
    }
  }
}

EffortProfile EffortProfile::zeros(int n) {
  return EffortProfile(std::vector<double>(static_cast<size_t>(n), 0.0));
}

GameInstance::GameInstance(CapabilityProfile capabilities, ScoreModel scores,
                           CostModel cost, RewardScheme rewards, double tbt)
    : capabilities_(std::move(capabilities)),
      scores_(std::move(scores)),
      cost_(std::move(cost)),
      rewards_(std::move(rewards)),
      tbt_(tbt) {
  const int n = capabilities_.size();
  if (scores_.num_players() != n) {
    throw ValidationError("game: score model must cover exactly " +
                          std::to_string(n) + " players");
  }
  if (rewards_.size() != n) {
    throw ValidationError("game: reward scheme length must equal n");
  }
  if (!(tbt_ >= 0.0) || !std::isfinite(tbt_)) {
    throw ValidationError("game: tbt level must be nonnegative");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(baseline_score(i) > baseline_score(i + 1))) {
      throw ValidationError(
          "game: baseline scores must be strictly decreasing in rank "
          "(players " + std::to_string(i) + ", " + std::to_string(i + 1) +
          " at tbt)");
    }
  }
}

GameInstance GameInstance::with_tbt(double tbt_level) const {
  return GameInstance(capabilities_, scores_, cost_, rewards_, tbt_level);
}

std::vector<double> realized_scores(const GameInstance& game,
                                    const EffortProfile& profile) {
  if (profile.size() != game.num_players()) {
    throw ValidationError("profile length does not match the game");
  }
  std::vector<double> scores;
  scores.reserve(static_cast<size_t>(game.num_players()));
  for (int i = 0; i < game.num_players(); ++i) {
    scores.push_back(game.scores().score(i, profile.effort(i) + game.tbt()));
  }
  return scores;
}

std::vector<int> rank_scores(std::span<const double> scores,
                             const CapabilityProfile& capabilities,
                             double tie_tolerance) {
  const int n = capabilities.size();
  if (static_cast<int>(scores.size()) != n) {
    throw ValidationError("rank: score vector length does not match");
  }
  if (!(tie_tolerance >= 0.0)) {
    throw ValidationError("rank: tie tolerance must be nonnegative");
  }
  // Sort by score descending; break near-ties (chained within the
  // tolerance) by capability, which never favors the lower-capability
  // player. With the default zero tolerance this computes
  //   rank(v_i) = 1 + #{j : v_j > v_i} + #{j : v_j = v_i, theta_j > theta_i}.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)]) {
      return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
    }
    return capabilities.theta(a) > capabilities.theta(b);
  });
  if (tie_tolerance > 0.0) {
    // Group scores whose consecutive gaps stay within the tolerance, then
    // reorder each group by capability.
    size_t group_start = 0;
    for (size_t k = 1; k <= order.size(); ++k) {
      const bool breaks =
          k == order.size() ||
          scores[static_cast<size_t>(order[k - 1])] -
                  scores[static_cast<size_t>(order[k])] >
              tie_tolerance;
      if (breaks) {
        std::sort(order.begin() + static_cast<long>(group_start),
                  order.begin() + static_cast<long>(k), [&](int a, int b) {
                    return capabilities.theta(a) > capabilities.theta(b);
                  });
        group_start = k;
      }
    }
  }
  std::vector<int> ranks(static_cast<size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    ranks[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos + 1;
  }
  return ranks;
}

double developer_utility(const GameInstance& game, const EffortProfile& profile,
                         int player) {
  if (player < 0 || player >= game.num_players()) {
    throw ValidationError("developer utility: player index out of range");
  }
  const auto scores = realized_scores(game, profile);
  const auto ranks = rank_scores(scores, game.capabilities());
  const int rank = ranks[static_cast<size_t>(player)];
  return game.rewards().reward(rank) - game.cost().eval(profile.effort(player));
}

double designer_utility(const GameInstance& game, const EffortProfile& profile,
                        const DesignerPrefs& prefs) {
  const auto scores = realized_scores(game, profile);
  const auto ranks = rank_scores(scores, game.capabilities());
  bool consistent = true;
  for (int i = 0; i < game.num_players(); ++i) {
    if (ranks[static_cast<size_t>(i)] != i + 1) {
      consistent = false;
      break;
    }
  }
  const double reward = consistent ? prefs.ranking_reward : 0.0;
  return reward - game.num_players() * prefs.tbt_cost.eval(game.tbt());
}

}  // namespace rankgame
