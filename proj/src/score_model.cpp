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

#include "rankgame/score_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankgame/errors.hpp"
#include "rankgame/numeric.hpp"

namespace rankgame {

namespace {

// Normalized scores are clamped away from 0 and 1 before the logit, which
// is undefined at the boundaries.
constexpr double kLogitClamp = 1e-12;

// Tolerance of the C2 concavity check on divided differences; discretization
// noise must not be reported as a violation.
constexpr double kConcavityTol = 1e-8;

void require_effort_nonneg(double effort) {
  if (!(effort >= 0.0)) {
    throw ValidationError("effort must be nonnegative");
  }
}

}  // namespace

void ScoreParams::validate() const {
  if (!(beta > 0.0)) {
    throw ValidationError("score params: beta must be positive");
  }
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0)) {
    throw ValidationError(
        "score params: need 0 <= lower < upper <= 1");
  }
  if (!std::isfinite(alpha)) {
    throw ValidationError("score params: alpha must be finite");
  }
}

double eval_score(const ScoreParams& params, double effort) {
  params.validate();
  require_effort_nonneg(effort);
  const double g = params.alpha + params.beta * std::log1p(effort);
  return params.lower + (params.upper - params.lower) * logistic(g);
}

double saturated_score(const ScoreParams& params) {
  params.validate();
  return params.upper;
}

MaybeEffort required_effort(const ScoreParams& params, double target) {
  params.validate();
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ValidationError("target score must lie in [0, 1]");
  }
  if (target >= params.upper) return std::nullopt;
  if (eval_score(params, 0.0) >= target) return 0.0;
  const double span = params.upper - params.lower;
  const double normalized =
      std::clamp((target - params.lower) / span, kLogitClamp,
                 1.0 - kLogitClamp);
  const double e = std::expm1((logit(normalized) - params.alpha) / params.beta);
  return std::max(0.0, e);
}

double ScoreRule::saturation(const ScoreParams& params) const {
  return eval(params, max_probe_effort());
}

MaybeEffort ScoreRule::required_effort(const ScoreParams& params,
                                       double target) const {
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ValidationError("target score must lie in [0, 1]");
  }
  const double horizon = max_probe_effort();
  if (eval(params, horizon) < target) return std::nullopt;
  return bracket_and_bisect([&](double e) { return eval(params, e); }, target,
                            1.0, horizon, 1e-12);
}

double PowerLawRule::eval(const ScoreParams& params, double effort) const {
  return eval_score(params, effort);
}

double PowerLawRule::saturation(const ScoreParams& params) const {
  return saturated_score(params);
}

MaybeEffort PowerLawRule::required_effort(const ScoreParams& params,
                                          double target) const {
  return rankgame::required_effort(params, target);
}

ScoreModel::ScoreModel(std::vector<ScoreParams> params,
                       std::shared_ptr<const ScoreRule> rule)
    : params_(std::move(params)),
      rule_(rule ? std::move(rule) : std::make_shared<const PowerLawRule>()) {
  if (params_.empty()) {
    throw ValidationError("score model: needs at least one player");
  }
  for (size_t i = 0; i < params_.size(); ++i) {
    params_[i].validate();
    const double v0 = rule_->eval(params_[i], 0.0);
    if (!(v0 >= params_[i].lower && v0 <= params_[i].upper)) {
      throw ValidationError("score model: evaluation at zero effort outside "
                            "[lower, upper] for player " + std::to_string(i));
    }
  }
}

const ScoreParams& ScoreModel::params(int player) const {
  if (player < 0 || player >= num_players()) {
    throw ValidationError("score model: player index out of range");
  }
  return params_[static_cast<size_t>(player)];
}

double ScoreModel::score(int player, double effort) const {
  return rule_->eval(params(player), effort);
}

double ScoreModel::saturation(int player) const {
  return rule_->saturation(params(player));
}

MaybeEffort ScoreModel::required_effort(int player, double target) const {
  return rule_->required_effort(params(player), target);
}

bool ScoreModel::is_power_law() const {
  return dynamic_cast<const PowerLawRule*>(rule_.get()) != nullptr;
}

namespace {

void check_sorted_grid(std::span<const double> grid, const char* label) {
  for (size_t k = 0; k + 1 < grid.size(); ++k) {
    if (!(grid[k] <= grid[k + 1])) {
      throw ValidationError(std::string(label) +
                            " grid must be sorted ascending");
    }
  }
  if (!grid.empty() && !(grid.front() >= 0.0)) {
    throw ValidationError(std::string(label) + " grid must be nonnegative");
  }
}

}  // namespace

RegularityReport check_regularity(const ScoreModel& model,
                                  std::span<const double> effort_grid,
                                  std::span<const double> score_grid) {
  if (effort_grid.empty()) {
    throw ValidationError("regularity check: effort grid must be nonempty");
  }
  check_sorted_grid(effort_grid, "effort");
  for (size_t k = 0; k + 1 < score_grid.size(); ++k) {
    if (!(score_grid[k] <= score_grid[k + 1])) {
      throw ValidationError("score grid must be sorted ascending");
    }
  }

  RegularityReport report;
  const int n = model.num_players();

  // C1: at each grid effort the higher-capability player scores strictly
  // higher. Players are indexed by decreasing capability, so compare
  // adjacent pairs.
  for (int i = 0; i + 1 < n; ++i) {
    for (double e : effort_grid) {
      const double hi = model.score(i, e);
      const double lo = model.score(i + 1, e);
      if (!(hi > lo)) {
        report.c1_violations.push_back(
            {i + 1, i, e, 0.0,
             "score of player " + std::to_string(i + 1) +
                 " not strictly below player " + std::to_string(i)});
      }
    }
  }

  // C2: nondecreasing in effort, with nonincreasing divided differences.
  for (int i = 0; i < n; ++i) {
    double prev_slope = 0.0;
    bool have_slope = false;
    for (size_t k = 0; k + 1 < effort_grid.size(); ++k) {
      const double h = effort_grid[k + 1] - effort_grid[k];
      if (h <= 0.0) continue;
      const double dv = model.score(i, effort_grid[k + 1]) -
                        model.score(i, effort_grid[k]);
      if (dv < -1e-12) {
        report.c2_violations.push_back(
            {i, -1, effort_grid[k], 0.0, "score decreases in effort"});
      }
      const double slope = dv / h;
      if (have_slope && slope > prev_slope + kConcavityTol) {
        report.c2_violations.push_back(
            {i, -1, effort_grid[k], 0.0, "marginal returns increase"});
      }
      prev_slope = slope;
      have_slope = true;
    }
  }

  // C3: the effort gap between a lower- and a higher-capability player is
  // nondecreasing in the target score.
  for (int i = 0; i + 1 < n; ++i) {
    const int lo = i + 1;
    double prev_gap = -std::numeric_limits<double>::infinity();
    for (double s : score_grid) {
      const MaybeEffort e_hi = model.required_effort(i, s);
      const MaybeEffort e_lo = model.required_effort(lo, s);
      if (!e_lo.has_value()) {
        // The weaker player saturates below s; the gap is infinite from
        // here on, which cannot decrease afterwards.
        prev_gap = std::numeric_limits<double>::infinity();
        continue;
      }
      if (!e_hi.has_value()) {
        report.c3_violations.push_back(
            {lo, i, 0.0, s,
             "stronger player saturates below a score the weaker one "
             "reaches"});
        continue;
      }
      const double gap = *e_lo - *e_hi;
      if (gap < prev_gap - 1e-9 * std::max(1.0, std::abs(prev_gap))) {
        report.c3_violations.push_back(
            {lo, i, 0.0, s, "effort gap shrinks at higher target"});
      }
      prev_gap = std::max(prev_gap, gap);
    }
  }
  return report;
}

RegularityReport check_regularity(const ScoreModel& model) {
  std::vector<double> efforts;
  efforts.push_back(0.0);
  const int steps = 60;
  const double lo = 1e-3, hi = 1e4;
  for (int k = 0; k <= steps; ++k) {
    efforts.push_back(
        lo * std::pow(hi / lo, static_cast<double>(k) / steps));
  }

  double max_baseline = 0.0;
  double min_saturation = 1.0;
  for (int i = 0; i < model.num_players(); ++i) {
    max_baseline = std::max(max_baseline, model.score(i, 0.0));
    min_saturation = std::min(min_saturation, model.saturation(i));
  }
  std::vector<double> scores;
  const double span = min_saturation - max_baseline;
  if (span > 1e-9) {
    const int points = 40;
    for (int k = 1; k <= points; ++k) {
      scores.push_back(max_baseline +
                       span * static_cast<double>(k) / (points + 1));
    }
  }
  return check_regularity(model, efforts, scores);
}

}  // namespace rankgame
