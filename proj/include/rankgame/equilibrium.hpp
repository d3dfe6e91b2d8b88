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

#ifndef RANKGAME_EQUILIBRIUM_HPP
#define RANKGAME_EQUILIBRIUM_HPP

#include <optional>
#include <vector>

#include "rankgame/game.hpp"

namespace rankgame {

/// Instances whose overtaking cost sits within this margin of the reward
/// gap are flagged marginal: the equilibrium condition is numerically
/// knife-edged there.
inline constexpr double kMarginalTolerance = 1e-6;

/// Just-overtake analysis for one adjacent rank pair (r-1, r).
struct OvertakeRecord {
  int rank = 0;                     ///< r in 2..n
  MaybeEffort effort_required;      ///< e_r^req; empty when unreachable
  MaybeEffort cost_required;        ///< c(e_r^req); empty when unreachable
  double reward_gap = 0.0;          ///< R_{r-1} - R_r
  bool profitable = false;          ///< cost_required < reward_gap
  bool marginal = false;            ///< |cost - gap| < kMarginalTolerance
};

enum class PneStatus { kAllZeroPne, kNoPne };

/// Verdict on the induced follower game: either the all-zero profile is the
/// (unique) pure Nash equilibrium, or no pure equilibrium exists at all.
struct EquilibriumVerdict {
  PneStatus status = PneStatus::kAllZeroPne;
  double tbt = 0.0;
  std::vector<OvertakeRecord> records;  ///< one per rank r = 2..n

  bool any_marginal() const;
  /// Smallest |cost - gap| across reachable records (infinity when none).
  double min_margin() const;
};

/// Minimal additional effort for the rank-r player to meet the baseline
/// score of the player ranked r-1 (the infimum of the strict-overtake set;
/// a tie alone does not overtake, but the infimum's cost is what the
/// equilibrium condition compares). Empty when the target saturates the
/// rank-r curve.
MaybeEffort just_overtake_effort(const GameInstance& game, int rank);

/// Same, at an explicit TbT level instead of the game's own.
MaybeEffort just_overtake_effort(const GameInstance& game, int rank,
                                 double tbt_level);

/// Checks the zero-effort equilibrium condition c(e_r^req) >= R_{r-1} - R_r
/// for every adjacent pair. Unreachable overtaking satisfies the condition.
EquilibriumVerdict zero_effort_pne_check(const GameInstance& game);
EquilibriumVerdict zero_effort_pne_check(const GameInstance& game,
                                         double tbt_level);

/// Full equilibrium verdict. The all-zero profile is the only candidate
/// equilibrium, so the game has a PNE iff the zero-effort condition holds;
/// otherwise no pure equilibrium exists. Requires the score model to pass
/// the default regularity check unless assume_regular acknowledges that the
/// caller verified it.
EquilibriumVerdict pne_verdict(const GameInstance& game,
                               bool assume_regular = false);

struct BruteForceOptions {
  double grid_step = 0.01;
  double grid_max = 10.0;
  /// A deviation must beat the current utility by more than this.
  double improve_tol = 1e-12;
  /// 0 = derive from hardware and the RANKGAME_THREADS cap.
  int threads = 0;
};

/// Independent exhaustive oracle: enumerates every effort profile on the
/// grid and reports each one from which no player has a strictly improving
/// on-grid deviation.
struct BruteForceReport {
  double grid_step = 0.0;
  double grid_max = 0.0;
  std::vector<std::vector<double>> pne_profiles;  ///< in enumeration order
  /// Grid-estimated distance between overtaking costs and reward gaps at
  /// the all-zero profile (infinity when nobody can overtake on the grid).
  double min_margin = 0.0;
  /// Largest one-step cost increment on the grid; margins below this are
  /// not resolvable at the chosen step.
  double cost_resolution = 0.0;
  bool inconclusive = false;
  /// grid_max covers every possibly-profitable deviation iff this holds.
  bool grid_max_sufficient = false;

  bool found_any() const { return !pne_profiles.empty(); }
  bool all_zero_only() const;
};

BruteForceReport brute_force_grid_verdict(const GameInstance& game,
                                          double grid_step, double grid_max);
BruteForceReport brute_force_grid_verdict(const GameInstance& game,
                                          const BruteForceOptions& options);

enum class MoverRule { kRoundRobin, kBestGainFirst };

struct DynamicsStep {
  int mover = 0;  ///< 0-based player index
  double old_effort = 0.0;
  double new_effort = 0.0;
  double utility_gain = 0.0;
};

enum class DynamicsOutcome { kFixedPoint, kCycleDetected, kExhausted };

struct DynamicsTrace {
  std::vector<DynamicsStep> steps;
  DynamicsOutcome outcome = DynamicsOutcome::kFixedPoint;
  std::vector<double> final_profile;
  int cycle_period = 0;       ///< valid for kCycleDetected
  int first_return_step = 0;  ///< valid for kCycleDetected
};

/// Grid best-response dynamics. Each step moves one player to its best
/// on-grid response when that strictly improves its utility. Terminates at
/// a fixed point, when an exact effort profile recurs, or after max_steps
/// moves. Start efforts are snapped to the grid.
DynamicsTrace best_response_dynamics(const GameInstance& game,
                                     const EffortProfile& start,
                                     MoverRule rule, double grid_step,
                                     int max_steps);

/// Whether realized scores preserve the capability ordering (up to ties).
struct OrderCheck {
  bool preserved = true;
  int higher = -1;  ///< first violating pair: higher-capability player...
  int lower = -1;   ///< ...strictly outscored by this lower-capability one
};

OrderCheck verify_order_preservation(const GameInstance& game,
                                     const EffortProfile& profile);

}  // namespace rankgame

#endif  // RANKGAME_EQUILIBRIUM_HPP
