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

#ifndef RANKGAME_SCORE_MODEL_HPP
#define RANKGAME_SCORE_MODEL_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rankgame {

/// Result of an effort inversion. Empty means the target score is
/// unreachable at any effort level, a first-class outcome (not a failure).
using MaybeEffort = std::optional<double>;

/// Per-model parameters of the generalized power-law score curve
///   v(e) = lower + (upper - lower) * logistic(alpha + beta * log(1 + e)).
struct ScoreParams {
  double alpha = 0.0;  ///< baseline performance on the logit scale
  double beta = 1.0;   ///< logit gain per unit of log-effort; must be > 0
  double lower = 0.0;  ///< lower attainable performance, in [0, 1)
  double upper = 1.0;  ///< upper attainable performance, in (lower, 1]

  /// Throws ValidationError unless beta > 0 and 0 <= lower < upper <= 1.
  void validate() const;
};

/// Evaluates the power-law score curve at a nonnegative effort.
double eval_score(const ScoreParams& params, double effort);

/// Supremum of the power-law score as effort grows without bound (= upper).
double saturated_score(const ScoreParams& params);

/// Smallest effort e with eval_score(params, e) >= target, in closed form.
/// Returns 0 when the baseline already meets the target and nullopt when
/// target >= upper (the curve saturates strictly below the target).
MaybeEffort required_effort(const ScoreParams& params, double target);

/// Score-evaluation rule: how ScoreParams translate into a score curve.
/// The default is the generalized power law above; other curve shapes can
/// be supplied as long as they map effort into [lower, upper] and are
/// nondecreasing in effort. Overriding eval() is sufficient: saturation and
/// inversion fall back to probing and bisection over [0, max_probe_effort].
class ScoreRule {
 public:
  virtual ~ScoreRule() = default;

  virtual double eval(const ScoreParams& params, double effort) const = 0;

  /// Numeric limit estimate: evaluation at the probe horizon.
  virtual double saturation(const ScoreParams& params) const;

  /// Bisection inversion over [0, max_probe_effort]; nullopt when the
  /// target is not met at the horizon.
  virtual MaybeEffort required_effort(const ScoreParams& params,
                                      double target) const;

  /// Effort horizon used by the fallback saturation / inversion.
  virtual double max_probe_effort() const { return 1e9; }

  virtual std::string name() const { return "custom"; }
};

/// The closed-form generalized power law (the default rule).
class PowerLawRule final : public ScoreRule {
 public:
  double eval(const ScoreParams& params, double effort) const override;
  double saturation(const ScoreParams& params) const override;
  MaybeEffort required_effort(const ScoreParams& params,
                              double target) const override;
  std::string name() const override { return "power_law"; }
};

/// Player-indexed score curves: one ScoreParams per player plus a shared
/// evaluation rule. Immutable after construction.
class ScoreModel {
 public:
  explicit ScoreModel(std::vector<ScoreParams> params,
                      std::shared_ptr<const ScoreRule> rule = nullptr);

  int num_players() const { return static_cast<int>(params_.size()); }
  const ScoreParams& params(int player) const;
  const std::vector<ScoreParams>& all_params() const { return params_; }
  const ScoreRule& rule() const { return *rule_; }

  double score(int player, double effort) const;
  double saturation(int player) const;
  MaybeEffort required_effort(int player, double target) const;

  bool is_power_law() const;

 private:
  std::vector<ScoreParams> params_;
  std::shared_ptr<const ScoreRule> rule_;
};

/// One sampled failure of an empirical regularity check.
struct RegularityViolation {
  int player = -1;     ///< player index (the lower-capability one for pairs)
  int other = -1;      ///< paired player index, or -1
  double effort = 0.0;  ///< sample effort (C1/C2 checks)
  double target = 0.0;  ///< sample target score (C3 check)
  std::string detail;
};

/// Sampled verification of the three score-curve regularities:
/// C1 capability monotonicity, C2 diminishing returns, C3 non-decreasing
/// effort gaps. Violations are data, not errors.
struct RegularityReport {
  std::vector<RegularityViolation> c1_violations;
  std::vector<RegularityViolation> c2_violations;
  std::vector<RegularityViolation> c3_violations;

  bool pass() const {
    return c1_violations.empty() && c2_violations.empty() &&
           c3_violations.empty();
  }
};

/// Checks C1-C3 by finite differences on the supplied grids. Players are
/// assumed ordered by decreasing capability. Grids must be nonempty
/// (score_grid may be empty, which skips C3) and sorted ascending.
RegularityReport check_regularity(const ScoreModel& model,
                                  std::span<const double> effort_grid,
                                  std::span<const double> score_grid);

/// Convenience overload with grids derived from the model: efforts span
/// [0, 1e4] log-spaced, scores span (max baseline, min saturation).
RegularityReport check_regularity(const ScoreModel& model);

}  // namespace rankgame

#endif  // RANKGAME_SCORE_MODEL_HPP
