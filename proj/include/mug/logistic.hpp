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
//
// Five-parameter monotone logistic used to map raw metric scores onto the
// MOS scale before computing linear correlation:
//
//   f(x) = b1 * (1/2 - 1 / (1 + exp(b2 * (x - b3)))) + b4 * x + b5
//
// fitted by least squares with a multi-start Nelder-Mead simplex.

#ifndef MUG_LOGISTIC_HPP_
#define MUG_LOGISTIC_HPP_

#include <span>

namespace mug {

struct LogisticParams {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double beta4 = 0.0;
  double beta5 = 0.0;
};

double logistic_eval(const LogisticParams& p, double x);

// Least-squares fit of the logistic to (scores, mos) pairs. Requires at
// least 5 points (5 parameters). Runs 4 documented starts plus a
// closed-form linear seed, so the returned SSE never exceeds the best pure
// linear fit (the b1 = 0 subfamily). Throws DegenerateInput for fewer than
// 5 points and FitDivergence if no start reaches a finite optimum.
LogisticParams fit_logistic(std::span<const double> scores,
                            std::span<const double> mos);

}  // namespace mug

#endif  // MUG_LOGISTIC_HPP_
