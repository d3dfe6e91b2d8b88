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

#ifndef RANKGAME_COST_MODEL_HPP
#define RANKGAME_COST_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

namespace rankgame {

/// Convex, nondecreasing, unbounded effort cost with c(0) = 0.
///
/// Three families are supported: linear kappa*e, power a*e^p with p >= 1,
/// and piecewise-linear with nondecreasing segment slopes (the last slope
/// must be positive so the cost is unbounded). Values are immutable and all
/// operations are pure.
class CostModel {
 public:
  struct Linear {
    double kappa;
  };
  struct Power {
    double a;
    double p;
  };
  struct Piecewise {
    std::vector<double> knots;   ///< strictly increasing, positive
    std::vector<double> slopes;  ///< one per segment = knots.size() + 1
    std::vector<double> cum;     ///< cost at each knot (derived)
  };

  static CostModel linear(double kappa);
  static CostModel power(double a, double p);
  static CostModel piecewise_linear(std::vector<double> knots,
                                    std::vector<double> slopes);

  /// c(effort); requires effort >= 0.
  double eval(double effort) const;

  /// sup{e : c(e) <= budget}; requires budget >= 0.
  double inverse(double budget) const;

  /// The Phi map: the effort z with c(z) = gamma * c(effort). Requires a
  /// strictly increasing cost and gamma > 0.
  double reparametrize_effort(double gamma, double effort) const;

  bool strictly_increasing() const;

  /// Infimum of the marginal cost over (0, upto]. Zero for power costs with
  /// p > 1 (their slope vanishes at the origin).
  double infimum_slope(double upto) const;

  const char* family_name() const;
  bool is_linear() const { return std::holds_alternative<Linear>(spec_); }
  const Linear& as_linear() const { return std::get<Linear>(spec_); }
  bool is_power() const { return std::holds_alternative<Power>(spec_); }
  const Power& as_power() const { return std::get<Power>(spec_); }
  bool is_piecewise() const { return std::holds_alternative<Piecewise>(spec_); }
  const Piecewise& as_piecewise() const { return std::get<Piecewise>(spec_); }

 private:
  explicit CostModel(std::variant<Linear, Power, Piecewise> spec)
      : spec_(std::move(spec)) {}

  std::variant<Linear, Power, Piecewise> spec_;
};

inline double eval_cost(const CostModel& cost, double effort) {
  return cost.eval(effort);
}
inline double inverse_cost(const CostModel& cost, double budget) {
  return cost.inverse(budget);
}
inline double reparametrize_effort(const CostModel& cost, double gamma,
                                   double effort) {
  return cost.reparametrize_effort(gamma, effort);
}

}  // namespace rankgame

#endif  // RANKGAME_COST_MODEL_HPP
