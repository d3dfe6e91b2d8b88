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

#include "rankgame/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "rankgame/errors.hpp"

namespace rankgame {

namespace {

void require_nonneg(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw ValidationError(std::string(what) + " must be nonnegative");
  }
}

}  // namespace

CostModel CostModel::linear(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ValidationError("linear cost: kappa must be positive");
  }
  return CostModel(Linear{kappa});
}

CostModel CostModel::power(double a, double p) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ValidationError("power cost: coefficient must be positive");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ValidationError("power cost: exponent must be >= 1 (convexity)");
  }
  return CostModel(Power{a, p});
}

CostModel CostModel::piecewise_linear(std::vector<double> knots,
                                      std::vector<double> slopes) {
  if (slopes.size() != knots.size() + 1) {
    throw ValidationError(
        "piecewise cost: need one slope per segment (knots + 1)");
  }
  double prev_knot = 0.0;
  for (double k : knots) {
    if (!(k > prev_knot) || !std::isfinite(k)) {
      throw ValidationError(
          "piecewise cost: knots must be positive and strictly increasing");
    }
    prev_knot = k;
  }
  double prev_slope = 0.0;
  for (double s : slopes) {
    if (!(s >= prev_slope) || !std::isfinite(s)) {
      throw ValidationError(
          "piecewise cost: slopes must be nonnegative and nondecreasing");
    }
    prev_slope = s;
  }
  if (!(slopes.back() > 0.0)) {
    throw ValidationError(
        "piecewise cost: final slope must be positive (unbounded cost)");
  }
  Piecewise pw{std::move(knots), std::move(slopes), {}};
  pw.cum.reserve(pw.knots.size());
  double x = 0.0, y = 0.0;
  for (size_t i = 0; i < pw.knots.size(); ++i) {
    y += pw.slopes[i] * (pw.knots[i] - x);
    x = pw.knots[i];
    pw.cum.push_back(y);
  }
  return CostModel(std::move(pw));
}

double CostModel::eval(double effort) const {
  require_nonneg(effort, "effort");
  if (const auto* lin = std::get_if<Linear>(&spec_)) {
    return lin->kappa * effort;
  }
  if (const auto* pow = std::get_if<Power>(&spec_)) {
    return pow->a * std::pow(effort, pow->p);
  }
  const auto& pw = std::get<Piecewise>(spec_);
  double x = 0.0, y = 0.0;
  for (size_t i = 0; i < pw.knots.size(); ++i) {
    if (effort <= pw.knots[i]) {
      return y + pw.slopes[i] * (effort - x);
    }
    x = pw.knots[i];
    y = pw.cum[i];
  }
  return y + pw.slopes.back() * (effort - x);
}

double CostModel::inverse(double budget) const {
  require_nonneg(budget, "budget");
  if (const auto* lin = std::get_if<Linear>(&spec_)) {
    return budget / lin->kappa;
  }
  if (const auto* pow = std::get_if<Power>(&spec_)) {
    return std::pow(budget / pow->a, 1.0 / pow->p);
  }
  const auto& pw = std::get<Piecewise>(spec_);
  double x = 0.0, y = 0.0;
  for (size_t i = 0; i < pw.knots.size(); ++i) {
    if (budget <= pw.cum[i]) {
      if (pw.slopes[i] > 0.0) {
        return x + (budget - y) / pw.slopes[i];
      }
      // Flat run (only possible as a prefix, slopes are nondecreasing):
      // the sup of the affordable set is the right end of the run.
      size_t j = i;
      while (j + 1 < pw.knots.size() && pw.slopes[j + 1] == 0.0) ++j;
      return pw.knots[j];
    }
    x = pw.knots[i];
    y = pw.cum[i];
  }
  return x + (budget - y) / pw.slopes.back();
}

double CostModel::reparametrize_effort(double gamma, double effort) const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("reparametrization: gamma must be positive");
  }
  require_nonneg(effort, "effort");
  if (!strictly_increasing()) {
    throw ValidationError(
        "unsupported reparametrization: cost is not strictly increasing");
  }
  if (const auto* lin = std::get_if<Linear>(&spec_)) {
    (void)lin;
    return gamma * effort;
  }
  if (const auto* pow = std::get_if<Power>(&spec_)) {
    return std::pow(gamma, 1.0 / pow->p) * effort;
  }
  return inverse(gamma * eval(effort));
}

bool CostModel::strictly_increasing() const {
  if (const auto* pw = std::get_if<Piecewise>(&spec_)) {
    return pw->slopes.front() > 0.0;  // slopes are nondecreasing
  }
  return true;
}

double CostModel::infimum_slope(double upto) const {
  if (const auto* lin = std::get_if<Linear>(&spec_)) {
    return lin->kappa;
  }
  if (const auto* pow = std::get_if<Power>(&spec_)) {
    if (pow->p == 1.0) return pow->a;
    return 0.0;  // marginal cost a*p*e^(p-1) vanishes at the origin
  }
  const auto& pw = std::get<Piecewise>(spec_);
  double inf = pw.slopes.front();
  (void)upto;  // slopes are nondecreasing, so the first segment is the inf
  return inf;
}

const char* CostModel::family_name() const {
  if (is_linear()) return "linear";
  if (is_power()) return "power";
  return "piecewise";
}

}  // namespace rankgame
