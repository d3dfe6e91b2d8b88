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

#ifndef RANKGAME_FITTING_HPP
#define RANKGAME_FITTING_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankgame/score_model.hpp"

namespace rankgame {

/// One observed (effort, score) point of a post-training trajectory.
struct TrajectorySample {
  double effort = 0.0;
  double score = 0.0;
};

struct ModelTrajectory {
  std::string id;
  /// Used only to order models when present (e.g. parameter count).
  std::optional<double> capability_proxy;
  std::vector<TrajectorySample> samples;
};

/// Per-model trajectory data. Each model needs at least three samples with
/// at least two distinct effort values; efforts are nonnegative and scores
/// lie in [0, 1].
struct TrajectoryDataset {
  std::vector<ModelTrajectory> models;

  /// Throws DataError when the invariants above fail.
  void validate() const;
};

/// Result of regressing the logit of the normalized score on log(1+e).
struct FitEntry {
  std::string id;
  double alpha = 0.0;
  double beta = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  double r_squared = 0.0;
  std::vector<double> residuals;  ///< logit-scale residuals, sample order
  bool accepted = false;          ///< false when beta <= 0
  std::string diagnostic;
  int clamped_rows = 0;  ///< observations clamped into (lower, upper)

  ScoreParams params() const;  ///< throws unless accepted
  /// Fitted raw-score curve at a given effort (valid for any beta).
  double predict(double effort) const;
};

/// Ordinary least squares fit of the power-law trajectory with the
/// asymptotes given. Observations on or outside the asymptotes are clamped
/// slightly inside with a warning count; observations materially outside
/// [lower, upper] raise DataError with the offending sample indices.
FitEntry fit_trajectory(std::span<const TrajectorySample> samples,
                        double lower, double upper);

/// Coarse grid search for the upper asymptote maximizing the fit's R^2.
struct UpperEstimate {
  double best_upper = 1.0;
  FitEntry best_fit;
  bool low_confidence = false;  ///< best R^2 below 0.5
  std::vector<std::pair<double, double>> profile;  ///< (candidate, R^2)
};

UpperEstimate estimate_upper_asymptote(std::span<const TrajectorySample> samples,
                                       double lower,
                                       std::span<const double> candidates);

/// Adjacent-pair statistics derived from two accepted fits: the baseline
/// catch-up effort of the weaker model, the learning-rate ratio, and (when
/// a reward gap in effort units is supplied) the effective incentive.
struct PairStats {
  MaybeEffort e_req_zero;  ///< empty when the weaker model saturates below
  double gamma = 0.0;      ///< beta_lo / beta_hi
  std::optional<double> lambda;
  bool inversion_warning = false;  ///< weaker model's baseline was ahead
};

PairStats pair_statistics(const FitEntry& fit_hi, const FitEntry& fit_lo,
                          std::optional<double> rho = std::nullopt);

/// Nonparametric check of the learning-rate ratio: finite-difference slope
/// of the weaker fitted curve over the stronger one at a common baseline.
/// Throws when the stronger curve's slope has saturated (below 1e-12).
double slope_ratio(const FitEntry& fit_hi, const FitEntry& fit_lo,
                   double delta, double h);

}  // namespace rankgame

#endif  // RANKGAME_FITTING_HPP
