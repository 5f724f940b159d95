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

#ifndef MUG_STATS_HPP_
#define MUG_STATS_HPP_

#include <span>
#include <vector>

namespace mug {

// Fractional (average) ranks, 1-based; ties share the mean of the rank run.
std::vector<double> average_ranks(std::span<const double> x);

// Pearson product-moment correlation. Throws DegenerateInput on mismatched
// or too-short inputs, or when either side has zero variance.
double plcc(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation as Pearson over average ranks. Tie-safe, unlike
// the 6*sum(d^2) shortcut. Same error contract as plcc.
double srcc(std::span<const double> x, std::span<const double> y);

}  // namespace mug

#endif  // MUG_STATS_HPP_
