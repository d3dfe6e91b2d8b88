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

#ifndef RANKGAME_GAME_HPP
#define RANKGAME_GAME_HPP

#include <span>
#include <vector>

#include "rankgame/cost_model.hpp"
#include "rankgame/score_model.hpp"

namespace rankgame {

/// Latent capabilities in strictly decreasing order. Ties are rejected at
/// construction; callers with tied capabilities must perturb them.
class CapabilityProfile {
 public:
  explicit CapabilityProfile(std::vector<double> thetas);

  int size() const { return static_cast<int>(thetas_.size()); }
  double theta(int i) const { return thetas_[static_cast<size_t>(i)]; }
  const std::vector<double>& thetas() const { return thetas_; }

 private:
  std::vector<double> thetas_;
};

/// Scalar capability from a multi-dimensional capability vector via a
/// benchmark-specific weight vector. The projection must be positive.
double project_capability(std::span<const double> weights,
                          std::span<const double> theta_vec);

/// Non-increasing rank rewards R_1 >= ... >= R_n >= 0.
class RewardScheme {
 public:
  explicit RewardScheme(std::vector<double> rewards);

  static RewardScheme winner_take_all(int n, double top_reward);
  static RewardScheme top_k(int n, int k, double reward);
  /// Smoothly decaying rewards R_j = top_reward * ratio^(j-1).
  static RewardScheme geometric_decay(int n, double top_reward, double ratio);

  int size() const { return static_cast<int>(rewards_.size()); }
  double reward(int rank) const {  // rank is 1-based
    return rewards_[static_cast<size_t>(rank - 1)];
  }
  /// Adjacent reward gap R_{r-1} - R_r for r in 2..n.
  double gap(int r) const { return reward(r - 1) - reward(r); }
  const std::vector<double>& values() const { return rewards_; }

 private:
  std::vector<double> rewards_;
};

/// Additional per-player effort beyond the tune-before-test baseline.
class EffortProfile {
 public:
  explicit EffortProfile(std::vector<double> efforts);
  static EffortProfile zeros(int n);

  int size() const { return static_cast<int>(efforts_.size()); }
  double effort(int i) const { return efforts_[static_cast<size_t>(i)]; }
  const std::vector<double>& efforts() const { return efforts_; }

 private:
  std::vector<double> efforts_;
};

/// The follower game: capabilities, score curves, a shared cost, rank
/// rewards and the designer's tune-before-test baseline. Construction
/// validates that baseline scores at the TbT level are strictly decreasing
/// in rank, the sanity implied by capability monotonicity.
class GameInstance {
 public:
  GameInstance(CapabilityProfile capabilities, ScoreModel scores,
               CostModel cost, RewardScheme rewards, double tbt);

  int num_players() const { return capabilities_.size(); }
  const CapabilityProfile& capabilities() const { return capabilities_; }
  const ScoreModel& scores() const { return scores_; }
  const CostModel& cost() const { return cost_; }
  const RewardScheme& rewards() const { return rewards_; }
  double tbt() const { return tbt_; }

  /// Baseline score s_i(tbt) of player i with zero additional effort.
  double baseline_score(int i) const { return scores_.score(i, tbt_); }
  /// Baseline score at an explicit TbT level.
  double baseline_score(int i, double tbt_level) const {
    return scores_.score(i, tbt_level);
  }

  /// Copy of this game at a different TbT level (revalidates baselines).
  GameInstance with_tbt(double tbt_level) const;

 private:
  CapabilityProfile capabilities_;
  ScoreModel scores_;
  CostModel cost_;
  RewardScheme rewards_;
  double tbt_;
};

/// Designer preferences: the reward for a capability-consistent ranking and
/// the per-model cost of applying the TbT baseline.
struct DesignerPrefs {
  double ranking_reward;
  CostModel tbt_cost;
};

/// Realized scores v_i = v(theta_i, e_i + tbt).
std::vector<double> realized_scores(const GameInstance& game,
                                    const EffortProfile& profile);

/// 1-based ranks. A player is beaten by strictly higher scores; exact ties
/// (within tie_tolerance, default exact equality) resolve in favor of the
/// higher-capability player, so the result is always a permutation.
///
/// The equilibrium analysis relies on the default zero tolerance: the
/// all-zero-uniqueness argument needs ties broken deterministically and
/// never in favor of the lower-capability model. A positive tolerance is
/// for callers modeling limited score precision in their own reporting.
std::vector<int> rank_scores(std::span<const double> scores,
                             const CapabilityProfile& capabilities,
                             double tie_tolerance = 0.0);

/// Developer utility U_i = R_rank(v_i) - c(e_i).
double developer_utility(const GameInstance& game, const EffortProfile& profile,
                         int player);

/// Designer utility: ranking_reward if the realized ranking equals the
/// capability ranking, minus n times the TbT cost.
double designer_utility(const GameInstance& game, const EffortProfile& profile,
                        const DesignerPrefs& prefs);

}  // namespace rankgame

#endif  // RANKGAME_GAME_HPP
