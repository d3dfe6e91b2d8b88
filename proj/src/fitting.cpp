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

#include "rankgame/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rankgame/errors.hpp"
#include "rankgame/numeric.hpp"

namespace rankgame {

namespace {

// Observations are clamped this far (on the normalized scale) inside the
// asymptotes before the logit transform; measurement noise may touch or
// slightly exceed the assumed limits.
constexpr double kClampMargin = 1e-6;

// Normalized scores beyond the asymptotes by more than this are data
// errors rather than boundary noise.
constexpr double kOutsideTol = 1e-9;

}  // namespace

void TrajectoryDataset::validate() const {
  if (models.empty()) {
    throw DataError("trajectory dataset: no rows");
  }
  for (const auto& model : models) {
    if (model.samples.size() < 3) {
      throw DataError("trajectory dataset: model '" + model.id +
                      "' needs at least 3 samples");
    }
    std::set<double> efforts;
    for (const auto& s : model.samples) {
      if (!(s.effort >= 0.0)) {
        throw DataError("trajectory dataset: model '" + model.id +
                        "' has a negative effort");
      }
      if (!(s.score >= 0.0 && s.score <= 1.0)) {
        throw DataError("trajectory dataset: model '" + model.id +
                        "' has a score outside [0, 1]");
      }
      efforts.insert(s.effort);
    }
    if (efforts.size() < 2) {
      throw DataError("trajectory dataset: model '" + model.id +
                      "' needs at least 2 distinct effort values");
    }
  }
}

ScoreParams FitEntry::params() const {
  if (!accepted) {
    throw ValidationError("fit entry '" + id + "' was rejected: " + diagnostic);
  }
  return ScoreParams{alpha, beta, lower, upper};
}

double FitEntry::predict(double effort) const {
  const double g = alpha + beta * std::log1p(effort);
  return lower + (upper - lower) * logistic(g);
}

FitEntry fit_trajectory(std::span<const TrajectorySample> samples,
                        double lower, double upper) {
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0)) {
    throw ValidationError("fit: need 0 <= lower < upper <= 1");
  }
  if (samples.size() < 2) {
    throw ValidationError("fit: need at least two samples");
  }

  const double span = upper - lower;
  std::vector<double> xs, ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  FitEntry fit;
  fit.lower = lower;
  fit.upper = upper;

  std::vector<int> offending;
  for (size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    if (!(s.effort >= 0.0)) {
      throw ValidationError("fit: efforts must be nonnegative");
    }
    const double normalized = (s.score - lower) / span;
    if (normalized < -kOutsideTol || normalized > 1.0 + kOutsideTol) {
      offending.push_back(static_cast<int>(k));
      continue;
    }
    double clamped = std::clamp(normalized, kClampMargin, 1.0 - kClampMargin);
    if (clamped != normalized) ++fit.clamped_rows;
    xs.push_back(std::log1p(s.effort));
    ys.push_back(logit(clamped));
  }
  if (!offending.empty()) {
    throw DataError("fit: " + std::to_string(offending.size()) +
                        " observation(s) outside the assumed (lower, upper) "
                        "range",
                    offending);
  }

  bool degenerate = true;
  for (size_t k = 1; k < xs.size(); ++k) {
    if (xs[k] != xs[0]) {
      degenerate = false;
      break;
    }
  }
  if (degenerate) {
    throw ValidationError("fit: degenerate design (all efforts equal)");
  }

  const OlsFit ols = ols_fit(xs, ys);
  fit.alpha = ols.intercept;
  fit.beta = ols.slope;
  fit.r_squared = ols.r_squared;
  fit.residuals.reserve(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    fit.residuals.push_back(ys[k] - (ols.intercept + ols.slope * xs[k]));
  }
  if (fit.beta > 0.0) {
    fit.accepted = true;
  } else {
    fit.accepted = false;
    fit.diagnostic =
        "nonpositive fitted beta (" + std::to_string(fit.beta) +
        "): scores do not increase with effort on the logit scale";
  }
  return fit;
}

UpperEstimate estimate_upper_asymptote(std::span<const TrajectorySample> samples,
                                       double lower,
                                       std::span<const double> candidates) {
  if (candidates.empty()) {
    throw ValidationError("upper estimate: candidate grid is empty");
  }
  double max_score = 0.0;
  for (const auto& s : samples) max_score = std::max(max_score, s.score);
  for (double u : candidates) {
    if (!(u > max_score && u <= 1.0)) {
      throw ValidationError(
          "upper estimate: candidates must lie in (max observed score, 1]");
    }
  }
  UpperEstimate estimate;
  bool have_best = false;
  for (double u : candidates) {
    const FitEntry fit = fit_trajectory(samples, lower, u);
    estimate.profile.emplace_back(u, fit.r_squared);
    if (!have_best || fit.r_squared > estimate.best_fit.r_squared) {
      estimate.best_upper = u;
      estimate.best_fit = fit;
      have_best = true;
    }
  }
  estimate.low_confidence = estimate.best_fit.r_squared < 0.5;
  return estimate;
}

PairStats pair_statistics(const FitEntry& fit_hi, const FitEntry& fit_lo,
                          std::optional<double> rho) {
  if (!fit_hi.accepted || !fit_lo.accepted) {
    throw ValidationError("pair statistics: both fits must be accepted");
  }
  if (rho.has_value() && !(*rho > 0.0)) {
    throw ValidationError("pair statistics: rho must be positive");
  }
  PairStats stats;
  stats.gamma = fit_lo.beta / fit_hi.beta;
  // Catch-up effort on the raw-score scale: this reduces to
  // exp((alpha_hi - alpha_lo) / beta_lo) - 1 when the pair shares its
  // normalization, and stays meaningful when it does not.
  const double target = eval_score(fit_hi.params(), 0.0);
  if (eval_score(fit_lo.params(), 0.0) >= target) {
    stats.e_req_zero = 0.0;
    stats.inversion_warning = true;
  } else {
    stats.e_req_zero = required_effort(fit_lo.params(), target);
  }
  if (rho.has_value() && stats.e_req_zero.has_value() &&
      *stats.e_req_zero > 0.0) {
    stats.lambda = *rho / *stats.e_req_zero;
  }
  return stats;
}

double slope_ratio(const FitEntry& fit_hi, const FitEntry& fit_lo,
                   double delta, double h) {
  if (!fit_hi.accepted || !fit_lo.accepted) {
    throw ValidationError("slope ratio: both fits must be accepted");
  }
  if (!(h > 0.0) || !(delta >= 0.0)) {
    throw ValidationError("slope ratio: need delta >= 0 and h > 0");
  }
  const double slope_hi = (fit_hi.predict(delta + h) - fit_hi.predict(delta)) / h;
  const double slope_lo = (fit_lo.predict(delta + h) - fit_lo.predict(delta)) / h;
  if (slope_hi < 1e-12) {
    throw ValidationError(
        "slope ratio: the stronger curve's slope has saturated");
  }
  return slope_lo / slope_hi;
}

}  // namespace rankgame
