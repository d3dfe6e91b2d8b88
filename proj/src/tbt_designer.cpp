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

#include "rankgame/tbt_designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankgame/errors.hpp"

namespace rankgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cost of the just-overtake effort for rank r at a TbT level; +infinity
// once the target saturates the rank-r curve (overtaking is impossible, so
// the equilibrium condition holds with room to spare).
double overtake_cost(const GameInstance& game, int rank, double tbt_level) {
  const MaybeEffort e = just_overtake_effort(game, rank, tbt_level);
  if (!e.has_value()) return kInf;
  return game.cost().eval(*e);
}

}  // namespace

ClimbingCostCurve climbing_cost_curve(const GameInstance& game,
                                      std::span<const double> tbt_grid) {
  for (size_t k = 0; k + 1 < tbt_grid.size(); ++k) {
    if (!(tbt_grid[k] <= tbt_grid[k + 1])) {
      throw ValidationError("climbing curve: tbt grid must be sorted");
    }
  }
  ClimbingCostCurve curve;
  curve.points.reserve(tbt_grid.size());
  for (double tbt : tbt_grid) {
    if (!(tbt >= 0.0)) {
      throw ValidationError("climbing curve: tbt levels must be nonnegative");
    }
    ClimbingPoint point;
    point.tbt = tbt;
    for (int r = 2; r <= game.num_players(); ++r) {
      const MaybeEffort e = just_overtake_effort(game, r, tbt);
      if (!e.has_value()) continue;
      if (!point.min_effort.has_value() || *e < *point.min_effort) {
        point.min_effort = e;
        point.argmin_rank = r;
      }
    }
    curve.points.push_back(point);
  }
  return curve;
}

RuleOfThumb rule_of_thumb_threshold(double e_req_zero, double gamma,
                                    double rho) {
  if (!(e_req_zero > 0.0)) {
    throw ValidationError("rule of thumb: e_req_zero must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ValidationError("rule of thumb: gamma must lie in (0, 1]");
  }
  if (!(rho > 0.0)) {
    throw ValidationError("rule of thumb: rho must be positive");
  }
  RuleOfThumb rule;
  rule.conservative =
      std::max(0.0, std::pow(rho / (e_req_zero + 1.0), gamma) - 1.0);
  rule.simplified = std::pow(rho / e_req_zero, gamma);
  return rule;
}

ThresholdReport stabilizing_threshold(const GameInstance& game,
                                      const ThresholdOptions& options) {
  if (!(options.bisect_tol > 0.0) || !(options.horizon > 0.0)) {
    throw ValidationError("threshold: tolerance and horizon must be positive");
  }
  ThresholdReport report;
  report.pairs.reserve(static_cast<size_t>(game.num_players() - 1));

  for (int r = 2; r <= game.num_players(); ++r) {
    PairThreshold pair;
    pair.rank = r;
    pair.reward_gap = game.rewards().gap(r);
    pair.e_req_zero = just_overtake_effort(game, r, 0.0);

    const double cost_at_zero =
        pair.e_req_zero.has_value() ? game.cost().eval(*pair.e_req_zero)
                                    : kInf;
    pair.marginal = std::isfinite(cost_at_zero) &&
                    std::abs(cost_at_zero - pair.reward_gap) <
                        kMarginalTolerance;

    if (game.scores().is_power_law()) {
      const double beta_hi = game.scores().params(r - 2).beta;
      const double beta_lo = game.scores().params(r - 1).beta;
      pair.gamma = beta_lo / beta_hi;
    }
    if (pair.reward_gap > 0.0) {
      const double kappa =
          game.cost().infimum_slope(game.cost().inverse(pair.reward_gap));
      if (kappa > 0.0) {
        pair.rho = pair.reward_gap / kappa;
      } else {
        report.warnings.push_back(
            "pair r=" + std::to_string(r) +
            ": cost has no positive linear lower bound near zero; rho and "
            "the rule of thumb are unavailable");
      }
    }
    if (pair.rho.has_value() && pair.e_req_zero.has_value() &&
        *pair.e_req_zero > 0.0) {
      pair.lambda = *pair.rho / *pair.e_req_zero;
      if (pair.gamma.has_value() && *pair.gamma > 0.0 && *pair.gamma <= 1.0) {
        pair.rule =
            rule_of_thumb_threshold(*pair.e_req_zero, *pair.gamma, *pair.rho);
      }
    }

    if (options.rule_of_thumb_only) {
      // Pair statistics only; the exact threshold stays uncomputed.
    } else if (cost_at_zero >= pair.reward_gap) {
      pair.delta_star = 0.0;  // already stable with no intervention
    } else {
      const auto g = [&](double tbt) {
        return overtake_cost(game, r, tbt) - pair.reward_gap;
      };
      // g(0) < 0 here; double an upper bracket until the condition holds,
      // then bisect down to the requested absolute tolerance.
      double lo = 0.0;
      double hi = 1.0;
      bool bracketed = g(hi) >= 0.0;
      while (!bracketed && hi < options.horizon) {
        lo = hi;
        hi = std::min(hi * 2.0, options.horizon);
        bracketed = g(hi) >= 0.0;
      }
      if (!bracketed) {
        pair.stabilizable = false;
        report.all_stabilizable = false;
      } else {
        while (hi - lo > options.bisect_tol) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          if (g(mid) >= 0.0) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        pair.delta_star = hi;
      }
    }
    report.pairs.push_back(std::move(pair));
  }

  report.exact = !options.rule_of_thumb_only;
  double global = 0.0;
  for (const auto& pair : report.pairs) {
    if (pair.stabilizable) global = std::max(global, pair.delta_star);
  }
  report.global_delta_star = report.all_stabilizable ? global : kInf;
  return report;
}

OptimalTbt optimal_tbt(const GameInstance& game, const DesignerPrefs& prefs,
                       const ThresholdOptions& options) {
  OptimalTbt result;
  result.thresholds = stabilizing_threshold(game, options);
  result.warnings = result.thresholds.warnings;
  if (!result.thresholds.all_stabilizable) {
    result.ok = false;
    return result;
  }
  result.ok = true;
  result.delta_star = result.thresholds.global_delta_star;
  const double intervention_cost =
      game.num_players() * prefs.tbt_cost.eval(result.delta_star);
  // At the induced all-zero equilibrium the ranking is capability
  // consistent, so the designer collects the full ranking reward.
  result.utility = prefs.ranking_reward - intervention_cost;
  if (prefs.ranking_reward < intervention_cost) {
    result.warnings.push_back(
        "ranking reward is below the total tune-before-test cost at the "
        "stabilizing level; designer utility is negative");
  }
  return result;
}

bool verify_monotone_stabilization(const GameInstance& game, double delta1,
                                   double delta2) {
  if (!(delta2 >= delta1) || !(delta1 >= 0.0)) {
    throw ValidationError("monotone stabilization: need 0 <= delta1 <= delta2");
  }
  const EquilibriumVerdict low = zero_effort_pne_check(game, delta1);
  if (low.status != PneStatus::kAllZeroPne) return true;  // vacuous
  const EquilibriumVerdict high = zero_effort_pne_check(game, delta2);
  return high.status == PneStatus::kAllZeroPne;
}

}  // namespace rankgame
