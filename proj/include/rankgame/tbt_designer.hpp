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

#ifndef RANKGAME_TBT_DESIGNER_HPP
#define RANKGAME_TBT_DESIGNER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankgame/equilibrium.hpp"
#include "rankgame/game.hpp"

namespace rankgame {

/// One point of the leaderboard-climbing cost curve: the cheapest adjacent
/// overtake at a given TbT level. min_effort is empty when every pair has
/// saturated (nobody can overtake at any effort).
struct ClimbingPoint {
  double tbt = 0.0;
  MaybeEffort min_effort;
  int argmin_rank = -1;  ///< rank attaining the minimum, -1 when saturated
};

struct ClimbingCostCurve {
  std::vector<ClimbingPoint> points;
};

/// min over r of the just-overtake effort, per TbT grid value. The game's
/// own TbT level is ignored; each grid value is evaluated in its place.
ClimbingCostCurve climbing_cost_curve(const GameInstance& game,
                                      std::span<const double> tbt_grid);

/// The power-law rule of thumb for a stabilizing TbT level.
struct RuleOfThumb {
  /// max(0, (rho / (e_req_zero + 1))^gamma - 1), the conservative form.
  double conservative = 0.0;
  /// (rho / e_req_zero)^gamma = lambda^gamma, the simplified form.
  double simplified = 0.0;
};

RuleOfThumb rule_of_thumb_threshold(double e_req_zero, double gamma,
                                    double rho);

/// Stabilizing threshold analysis for one adjacent pair.
struct PairThreshold {
  int rank = 0;
  bool stabilizable = true;
  double delta_star = 0.0;  ///< valid when stabilizable
  double reward_gap = 0.0;
  MaybeEffort e_req_zero;           ///< overtaking effort at TbT = 0
  std::optional<double> gamma;      ///< beta_r / beta_{r-1} (power law only)
  std::optional<double> rho;        ///< gap / kappa; needs a positive kappa
  std::optional<double> lambda;     ///< rho / e_req_zero
  std::optional<RuleOfThumb> rule;  ///< needs rho, gamma and e_req_zero > 0
  bool marginal = false;            ///< knife-edge condition at TbT = 0
};

struct ThresholdReport {
  std::vector<PairThreshold> pairs;
  bool all_stabilizable = true;
  /// max over pairs of delta_star; valid when all_stabilizable and exact.
  double global_delta_star = 0.0;
  /// False when the bisection was skipped (rule-of-thumb-only mode), in
  /// which case delta_star fields are not meaningful.
  bool exact = true;
  std::vector<std::string> warnings;
};

struct ThresholdOptions {
  /// Bisection width on the TbT level at which the search stops.
  double bisect_tol = 1e-9;
  /// TbT level beyond which a pair is declared not stabilizable.
  double horizon = 1e12;
  /// Skip the exact bisection and report only pair statistics and the
  /// power-law rules of thumb.
  bool rule_of_thumb_only = false;
};

/// Per-pair and global stabilizing TbT thresholds, by monotone bisection of
/// c(e_r^req(tbt)) - (R_{r-1} - R_r). Pairs already stable at TbT = 0 get a
/// zero threshold; pairs still unstable at the horizon are reported as not
/// stabilizable. The game's own TbT level is ignored.
ThresholdReport stabilizing_threshold(const GameInstance& game,
                                      const ThresholdOptions& options = {});

/// The designer's optimal TbT choice: the cheapest level that induces the
/// all-zero follower equilibrium, and the utility it earns.
struct OptimalTbt {
  bool ok = false;  ///< false when some pair is not stabilizable
  double delta_star = 0.0;
  double utility = 0.0;
  ThresholdReport thresholds;
  std::vector<std::string> warnings;
};

OptimalTbt optimal_tbt(const GameInstance& game, const DesignerPrefs& prefs,
                       const ThresholdOptions& options = {});

/// Property form of the monotone stabilization result: whenever the
/// all-zero profile is an equilibrium at delta1 <= delta2, it remains one
/// at delta2. Returns the implication's truth value.
bool verify_monotone_stabilization(const GameInstance& game, double delta1,
                                   double delta2);

}  // namespace rankgame

#endif  // RANKGAME_TBT_DESIGNER_HPP
