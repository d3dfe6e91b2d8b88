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

#ifndef RANKGAME_NUMERIC_HPP
#define RANKGAME_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <optional>

namespace rankgame {

/// Logistic function, numerically stable on both tails.
inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double z = std::exp(x);
  return z / (1.0 + z);
}

/// Inverse logistic. The argument must lie strictly inside (0, 1).
inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// Smallest root of f(x) = target for a nondecreasing f, found by bisection
/// on [lo, hi]. Requires f(lo) <= target <= f(hi). Converges to a relative
/// width of rel_tol (with an absolute floor for brackets near zero).
template <typename F>
double bisect_nondecreasing(F&& f, double lo, double hi, double target,
                            double rel_tol = 1e-12, int max_iter = 400) {
  for (int i = 0; i < max_iter; ++i) {
    if (hi - lo <= rel_tol * std::max(1.0, std::abs(lo))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted in doubles
    if (f(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// Finds the smallest x >= 0 with f(x) >= target by doubling an upper
/// bracket starting at `start` (capped at `horizon`) and then bisecting.
/// Returns nullopt when f never reaches the target below the horizon.
template <typename F>
std::optional<double> bracket_and_bisect(F&& f, double target, double start,
                                         double horizon,
                                         double rel_tol = 1e-12) {
  if (f(0.0) >= target) return 0.0;
  double lo = 0.0;
  double hi = std::max(start, 1e-9);
  while (f(hi) < target) {
    lo = hi;
    if (hi >= horizon) return std::nullopt;
    hi = std::min(hi * 2.0, horizon);
  }
  return bisect_nondecreasing(f, lo, hi, target, rel_tol);
}

/// Ordinary least squares for y = intercept + slope * x.
struct OlsFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

template <typename XS, typename YS>
OlsFit ols_fit(const XS& xs, const YS& ys) {
  const size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  if (syy < 1e-30) {
    fit.r_squared = ss_res < 1e-30 ? 1.0 : 0.0;
  } else {
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace rankgame

#endif  // RANKGAME_NUMERIC_HPP
