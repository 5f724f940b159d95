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
// Naive single-threaded reference implementation of the metric pipeline.
// Written independently of the optimized kernels: triple-loop convolution
// against explicit kernel arrays, std::sort + std::unique deduplication.
// Tests assert bit-exact agreement with the mug:: functions, and the
// kernel benchmark compares throughput against them. Not optimized on
// purpose; use mug::score_image for real workloads.

#ifndef MUG_SERIAL_HPP_
#define MUG_SERIAL_HPP_

#include "mug/image.hpp"
#include "mug/metric.hpp"

namespace mug::serial {

LuminanceImage rgb_to_luminance(const RgbImage& img);

GradientField scharr_gradients(const LuminanceImage& img);

UniqueGradientSpectrum unique_gradient_spectrum(const GradientField& field);

MetricResult score_image(const RgbImage& img);
MetricResult score_image(const LuminanceImage& img);

}  // namespace mug::serial

#endif  // MUG_SERIAL_HPP_
