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

#include "mug/serial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mug/errors.hpp"

namespace mug::serial {
namespace {

constexpr double kScharrX[3][3] = {{3, 0, -3}, {10, 0, -10}, {3, 0, -3}};
constexpr double kScharrY[3][3] = {{3, 10, 3}, {0, 0, 0}, {-3, -10, -3}};

constexpr int kScharrXi[3][3] = {{3, 0, -3}, {10, 0, -10}, {3, 0, -3}};
constexpr int kScharrYi[3][3] = {{3, 10, 3}, {0, 0, 0}, {-3, -10, -3}};

MetricResult scores_from_spectrum(UniqueGradientSpectrum spec) {
  MetricResult r;
  r.nug = spec.nug();
  r.mug = mug_score(spec);
  const MugPlusScore mp = mug_plus_score(spec);
  r.mug_plus = mp.mug_plus;
  r.n_available = mp.n_available;
  return r;
}

}  // namespace

LuminanceImage rgb_to_luminance(const RgbImage& img) {
  LuminanceImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Rgb8 p = img.at(x, y);
      out.at(x, y) = (6 * p.r + 63 * p.g + 27 * p.b) / 100.0;
    }
  }
  return out;
}

GradientField scharr_gradients(const LuminanceImage& img) {
  if (img.width < 3 || img.height < 3) {
    throw ImageTooSmall("image must be at least 3x3 for the gradient window");
  }
  GradientField field;
  field.width = img.width - 2;
  field.height = img.height - 2;
  const std::size_t n = std::size_t(field.width) * field.height;
  field.gx.resize(n);
  field.gy.resize(n);
  field.magnitude.resize(n);
  for (int y = 1; y < img.height - 1; ++y) {
    for (int x = 1; x < img.width - 1; ++x) {
      double sx = 0.0;
      double sy = 0.0;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double v = img.at(x + kx - 1, y + ky - 1);
          sx += kScharrX[ky][kx] * v;
          sy += kScharrY[ky][kx] * v;
        }
      }
      const std::size_t i = std::size_t(y - 1) * field.width + (x - 1);
      field.gx[i] = sx;
      field.gy[i] = sy;
      field.magnitude[i] = std::sqrt(sx * sx + sy * sy);
    }
  }
  return field;
}

UniqueGradientSpectrum unique_gradient_spectrum(const GradientField& field) {
  std::vector<double> values = field.magnitude;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  UniqueGradientSpectrum spec;
  spec.values = std::move(values);
  return spec;
}

MetricResult score_image(const RgbImage& img) {
  if (img.width < 3 || img.height < 3) {
    throw ImageTooSmall("image must be at least 3x3 for the gradient window");
  }
  std::vector<int> lat(std::size_t(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Rgb8 p = img.at(x, y);
      lat[std::size_t(y) * img.width + x] = 6 * p.r + 63 * p.g + 27 * p.b;
    }
  }
  std::vector<std::int64_t> squared;
  squared.reserve(std::size_t(img.width - 2) * (img.height - 2));
  for (int y = 1; y < img.height - 1; ++y) {
    for (int x = 1; x < img.width - 1; ++x) {
      std::int64_t gx = 0;
      std::int64_t gy = 0;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const int v = lat[std::size_t(y + ky - 1) * img.width + (x + kx - 1)];
          gx += kScharrXi[ky][kx] * v;
          gy += kScharrYi[ky][kx] * v;
        }
      }
      squared.push_back(gx * gx + gy * gy);
    }
  }
  std::sort(squared.begin(), squared.end());
  squared.erase(std::unique(squared.begin(), squared.end()), squared.end());
  UniqueGradientSpectrum spec;
  spec.values.resize(squared.size());
  for (std::size_t i = 0; i < squared.size(); ++i) {
    spec.values[i] = std::sqrt(static_cast<double>(squared[i])) / 100.0;
  }
  return scores_from_spectrum(std::move(spec));
}

MetricResult score_image(const LuminanceImage& img) {
  return scores_from_spectrum(
      serial::unique_gradient_spectrum(serial::scharr_gradients(img)));
}

}  // namespace mug::serial
