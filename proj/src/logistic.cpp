// Copyright 2026 The MUG Authors. All Rights Reserved.
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

#include "mug/logistic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "mug/errors.hpp"

namespace mug {
namespace {

constexpr int kDims = 5;
constexpr int kMaxIterations = 5000;
constexpr double kRelativeTolerance = 1e-10;

using Point = std::array<double, kDims>;

double sse(const Point& p, std::span<const double> x,
           std::span<const double> y) {
  LogisticParams params{p[0], p[1], p[2], p[3], p[4]};
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = logistic_eval(params, x[i]) - y[i];
    total += d * d;
  }
  return std::isfinite(total) ? total
                              : std::numeric_limits<double>::infinity();
}

// Standard Nelder-Mead downhill simplex, minimizing f. Stops on relative
// spread of the vertex values or on the iteration cap.
template <typename F>
std::pair<Point, double> nelder_mead(F&& f, const Point& start) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::array<Point, kDims + 1> simplex;
  std::array<double, kDims + 1> value;
  simplex[0] = start;
  for (int i = 0; i < kDims; ++i) {
    simplex[i + 1] = start;
    const double step =
        std::abs(start[i]) > 1e-12 ? 0.05 * std::abs(start[i]) : 0.1;
    simplex[i + 1][i] += step;
  }
  for (int i = 0; i <= kDims; ++i) value[i] = f(simplex[i]);

  std::array<int, kDims + 1> idx;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (int i = 0; i <= kDims; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    const int best = idx[0];
    const int second_worst = idx[kDims - 1];
    const int worst = idx[kDims];

    const double spread = value[worst] - value[best];
    if (std::isfinite(value[worst]) &&
        spread <= kRelativeTolerance * (std::abs(value[best]) + 1e-30)) {
      break;
    }

    Point centroid{};
    for (int i = 0; i <= kDims; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < kDims; ++d) centroid[d] += simplex[i][d];
    }
    for (int d = 0; d < kDims; ++d) centroid[d] /= kDims;

    auto blend = [&](double coeff, const Point& away) {
      Point p;
      for (int d = 0; d < kDims; ++d) {
        p[d] = centroid[d] + coeff * (centroid[d] - away[d]);
      }
      return p;
    };

    const Point reflected = blend(kReflect, simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const Point expanded = blend(kExpand, simplex[worst]);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      simplex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < value[worst];
    Point contracted;
    for (int d = 0; d < kDims; ++d) {
      const double target = outside ? reflected[d] : simplex[worst][d];
      contracted[d] = centroid[d] + kContract * (target - centroid[d]);
    }
    const double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, value[worst])) {
      simplex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }
    for (int i = 0; i <= kDims; ++i) {
      if (i == best) continue;
      for (int d = 0; d < kDims; ++d) {
        simplex[i][d] =
            simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
      }
      value[i] = f(simplex[i]);
    }
  }

  int best = 0;
  for (int i = 1; i <= kDims; ++i) {
    if (value[i] < value[best]) best = i;
  }
  return {simplex[best], value[best]};
}

}  // namespace

double logistic_eval(const LogisticParams& p, double x) {
  const double z = std::clamp(p.beta2 * (x - p.beta3), -745.0, 745.0);
  return p.beta1 * (0.5 - 1.0 / (1.0 + std::exp(z))) + p.beta4 * x + p.beta5;
}

LogisticParams fit_logistic(std::span<const double> scores,
                            std::span<const double> mos) {
  if (scores.size() != mos.size()) {
    throw DegenerateInput("scores and mos must have equal length");
  }
  const std::size_t n = scores.size();
  if (n < 5) {
    throw DegenerateInput("logistic fit needs at least 5 points, got " +
                          std::to_string(n));
  }

  double mean_x = 0.0, mean_y = 0.0;
  double min_y = mos[0], max_y = mos[0];
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += scores[i];
    mean_y += mos[i];
    min_y = std::min(min_y, mos[i]);
    max_y = std::max(max_y, mos[i]);
  }
  mean_x /= double(n);
  mean_y /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = scores[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (mos[i] - mean_y);
  }
  const double std_x = n > 1 ? std::sqrt(sxx / double(n - 1)) : 0.0;
  const double inv_std = std_x > 0.0 ? 1.0 / std_x : 1.0;
  const double orient = sxy >= 0.0 ? 1.0 : -1.0;

  // Documented starts: amplitude from the MOS range oriented by the raw
  // correlation, slope 1/std(scores) centered at the score mean, plus
  // +-50% jitter on beta2 and beta3.
  std::vector<Point> starts;
  const Point base{orient * (max_y - min_y), inv_std, mean_x, 0.0, mean_y};
  starts.push_back(base);
  for (const auto& [j2, j3] : {std::pair{1.5, 0.5}, std::pair{0.5, 1.5},
                               std::pair{1.5, 1.5}}) {
    Point s = base;
    s[1] *= j2;
    s[2] *= j3;
    starts.push_back(s);
  }
  // Closed-form linear seed: guarantees the result is never worse than the
  // best pure linear fit, which the b1 = 0 subfamily contains.
  const double ols_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const Point ols{0.0, inv_std, mean_x, ols_slope, mean_y - ols_slope * mean_x};
  starts.push_back(ols);

  auto objective = [&](const Point& p) { return sse(p, scores, mos); };
  Point best_point = ols;
  double best_value = objective(ols);
  for (const Point& start : starts) {
    const auto [point, val] = nelder_mead(objective, start);
    if (val < best_value) {
      best_value = val;
      best_point = point;
    }
  }
  if (!std::isfinite(best_value)) {
    throw FitDivergence("no optimizer start reached a finite optimum");
  }
  return {best_point[0], best_point[1], best_point[2], best_point[3],
          best_point[4]};
}

}  // namespace mug
