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

#include <cmath>
#include <random>

#include <doctest.h>

#include "rankgame/errors.hpp"
#include "test_support.hpp"

using namespace rankgame;
using namespace rankgame::testing;

namespace {

CostModel random_strictly_increasing_cost(std::mt19937& rng) {
  switch (rng() % 3) {
    case 0:
      return CostModel::linear(uniform(rng, 0.2, 3.0));
    case 1:
      return CostModel::power(uniform(rng, 0.2, 3.0), uniform(rng, 1.0, 3.0));
    default: {
      std::vector<double> knots{uniform(rng, 0.5, 2.0)};
      knots.push_back(knots[0] + uniform(rng, 0.5, 2.0));
      const double s0 = uniform(rng, 0.2, 1.0);
      std::vector<double> slopes{s0, s0 + uniform(rng, 0.0, 1.0)};
      slopes.push_back(slopes[1] + uniform(rng, 0.0, 2.0));
      return CostModel::piecewise_linear(std::move(knots), std::move(slopes));
    }
  }
}

}  // namespace

TEST_CASE("eval_cost basics") {
  CHECK(CostModel::linear(1.0).eval(0.0) == 0.0);
  CHECK(close(CostModel::linear(2.0).eval(6.389), 12.778, 1e-12));
  CHECK(CostModel::power(0.5, 2.0).eval(4.0) == 8.0);
  const auto pw = CostModel::piecewise_linear({5.0}, {1.0, 3.0});
  CHECK(pw.eval(0.0) == 0.0);
  CHECK(pw.eval(5.0) == 5.0);
  CHECK(pw.eval(7.0) == 11.0);
  CHECK_THROWS_AS(pw.eval(-1.0), ValidationError);
}

TEST_CASE("cost construction rejects invalid families") {
  CHECK_THROWS_AS(CostModel::linear(0.0), ValidationError);
  CHECK_THROWS_AS(CostModel::linear(-2.0), ValidationError);
  CHECK_THROWS_AS(CostModel::power(1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(CostModel::power(0.0, 2.0), ValidationError);
  // Decreasing slopes are not convex.
  CHECK_THROWS_AS(CostModel::piecewise_linear({5.0}, {3.0, 1.0}),
                  ValidationError);
  // A zero final slope would bound the cost.
  CHECK_THROWS_AS(CostModel::piecewise_linear({5.0}, {0.0, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(CostModel::piecewise_linear({5.0, 3.0}, {1.0, 2.0, 3.0}),
                  ValidationError);
  CHECK_THROWS_AS(CostModel::piecewise_linear({5.0}, {1.0}), ValidationError);
}

TEST_CASE("inverse_cost examples") {
  CHECK(CostModel::linear(1.0).inverse(10.0) == 10.0);
  CHECK(close(CostModel::power(0.5, 2.0).inverse(8.0), 4.0, 1e-12));
  const auto pw = CostModel::piecewise_linear({5.0}, {1.0, 3.0});
  CHECK(close(pw.inverse(11.0), 7.0, 1e-12));
  // Flat prefix: the affordable set at budget zero extends to the knot.
  const auto flat = CostModel::piecewise_linear({2.0}, {0.0, 1.0});
  CHECK(flat.inverse(0.0) == 2.0);
  CHECK(close(flat.inverse(3.0), 5.0, 1e-12));
}

TEST_CASE("inverse round-trips eval for strictly increasing families") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const CostModel cost = random_strictly_increasing_cost(rng);
    const double e = uniform(rng, 0.0, 20.0);
    CHECK(close_rel(cost.inverse(cost.eval(e)), e, 1e-9));
  }
}

TEST_CASE("reparametrization preserves cost scaling") {
  CHECK(CostModel::linear(1.0).reparametrize_effort(2.0, 3.0) == 6.0);
  CHECK(close(CostModel::power(1.0, 2.0).reparametrize_effort(4.0, 3.0), 6.0,
              1e-12));
  std::mt19937 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const CostModel cost = random_strictly_increasing_cost(rng);
    const double gamma = uniform(rng, 0.1, 5.0);
    const double e = uniform(rng, 0.0, 15.0);
    const double z = cost.reparametrize_effort(gamma, e);
    CHECK(close_rel(cost.eval(z), gamma * cost.eval(e), 1e-9));
    CHECK(cost.reparametrize_effort(1.0, e) == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("reparametrization rejects non-strictly-increasing costs") {
  const auto flat = CostModel::piecewise_linear({2.0}, {0.0, 1.0});
  CHECK_THROWS_AS(flat.reparametrize_effort(2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(CostModel::linear(1.0).reparametrize_effort(0.0, 1.0),
                  ValidationError);
}

TEST_CASE("costs are midpoint convex") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const CostModel cost = random_strictly_increasing_cost(rng);
    const double a = uniform(rng, 0.0, 20.0);
    const double b = uniform(rng, 0.0, 20.0);
    const double mid = cost.eval(0.5 * (a + b));
    const double chord = 0.5 * (cost.eval(a) + cost.eval(b));
    CHECK(mid <= chord + 1e-12 * std::max(1.0, chord));
  }
}

TEST_CASE("infimum slope backs the effort-unit conversion") {
  CHECK(CostModel::linear(1.5).infimum_slope(10.0) == 1.5);
  CHECK(CostModel::power(2.0, 1.0).infimum_slope(10.0) == 2.0);
  CHECK(CostModel::power(2.0, 2.0).infimum_slope(10.0) == 0.0);
  CHECK(CostModel::piecewise_linear({5.0}, {1.0, 3.0}).infimum_slope(10.0) ==
        1.0);
}
