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
// NUG / MUG / MUG+ blockiness scores for JPEG-compressed images.
//
// The pipeline is: luminance plane -> 3x3 Scharr gradients on the interior
// -> per-pixel gradient magnitude -> set of distinct magnitude values
// ("unique gradient spectrum"). NUG is the size of that set. MUG is the
// lower-median of the standard-deviation-normalized spectrum divided by NUG.
// MUG+ further divides by M - N + 1, where N counts the distinct spectrum
// values found at indices floor(NUG / i), i = 2..M+1.
//
// All functions are pure; images are never mutated. The heavy kernels are
// OpenMP-parallel; results are bit-identical at any thread count. A naive
// single-threaded mirror of the whole pipeline lives in mug/serial.hpp and
// must match these functions bit-exactly.

#ifndef MUG_METRIC_HPP_
#define MUG_METRIC_HPP_

#include <cstdint>
#include <vector>

#include "mug/image.hpp"

namespace mug {

// Number of spectrum indices probed by MUG+ (the i = 2..21 index family).
// Fixed by construction, not a tuning knob.
inline constexpr int kSpectrumDepth = 19;

// Scharr responses over the image interior (valid 3x3 windows only, so the
// field is 2 pixels narrower and shorter than its source image). Border
// padding is deliberately not offered: padded windows would inject gradient
// values that never occur in the image.
struct GradientField {
  int width = 0;   // source width - 2
  int height = 0;  // source height - 2
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;  // sqrt(gx^2 + gy^2), elementwise
};

// Distinct gradient magnitudes, strictly ascending. Equality is exact
// (bit-level): with 8-bit inputs and integer kernel weights the magnitudes
// live on a discrete lattice, so no epsilon is needed.
struct UniqueGradientSpectrum {
  std::vector<double> values;

  std::int64_t nug() const { return static_cast<std::int64_t>(values.size()); }
};

struct MetricResult {
  std::int64_t nug = 0;
  double mug = 0.0;
  double mug_plus = 0.0;
  int n_available = 0;  // N, in [1, kSpectrumDepth]

  friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

struct MugPlusScore {
  double mug_plus = 0.0;
  int n_available = 0;
};

// L = 0.06 R + 0.63 G + 0.27 B. Evaluated as (6R + 63G + 27B) / 100 with an
// exact integer numerator, i.e. correctly rounded; equal-luminance pixels
// always map to the same double.
LuminanceImage rgb_to_luminance(const RgbImage& img);

// 3x3 Scharr responses (weights 3/10/3, unnormalized) at every interior
// pixel. Throws ImageTooSmall if either dimension is < 3.
GradientField scharr_gradients(const LuminanceImage& img);

// Sorted distinct magnitudes of the field.
UniqueGradientSpectrum unique_gradient_spectrum(const GradientField& field);

// uG' = uG / sqrt(sigma(uG)), sample standard deviation over the distinct
// values. Throws DegenerateSpectrum if the spectrum has fewer than 2 values.
std::vector<double> normalize_spectrum(const UniqueGradientSpectrum& spec);

// Lower median of the normalized spectrum divided by NUG. A single-value
// spectrum (constant image) scores 0: no blockiness evidence. The returned
// value is adjusted by at most a few ulps so that dividing it by the MUG+
// divisor is exact, which keeps mug / mug_plus an exact integer in double
// arithmetic.
double mug_score(const UniqueGradientSpectrum& spec);

// MUG / (M - N + 1) with N the number of distinct values at indices
// max(1, floor(NUG / i)), i = 2..M+1.
MugPlusScore mug_plus_score(const UniqueGradientSpectrum& spec);

// Full pipeline. The RgbImage overload evaluates luminance and the Scharr
// responses in exact integer arithmetic (magnitudes = sqrt(gx^2 + gy^2)
// with an exact integer radicand), which makes the result invariant under
// constant brightness shifts and independent of summation order. The
// LuminanceImage overload runs the same pipeline in double arithmetic for
// arbitrary real-valued planes. Throws ImageTooSmall below 3x3.
MetricResult score_image(const RgbImage& img);
MetricResult score_image(const LuminanceImage& img);

}  // namespace mug

#endif  // MUG_METRIC_HPP_
