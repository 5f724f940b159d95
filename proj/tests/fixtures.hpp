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
// Deterministic test images shared across suites.

#ifndef MUG_TESTS_FIXTURES_HPP_
#define MUG_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mug/image.hpp"

namespace mug::testing {

inline RgbImage constant_image(int w, int h, std::uint8_t v) {
  RgbImage img(w, h);
  for (auto& p : img.pixels) p = {v, v, v};
  return img;
}

inline RgbImage random_rgb(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  RgbImage img(w, h);
  for (auto& p : img.pixels) {
    p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)),
         std::uint8_t(byte(rng))};
  }
  return img;
}

inline LuminanceImage random_luminance(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 255.0);
  LuminanceImage img(w, h);
  for (auto& v : img.values) v = value(rng);
  return img;
}

// Bilinearly interpolated random lattice; one octave of value noise.
inline std::vector<double> noise_octave(int w, int h, int cell,
                                        std::mt19937& rng) {
  const int gw = w / cell + 2;
  const int gh = h / cell + 2;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> grid(std::size_t(gw) * gh);
  for (auto& g : grid) g = unit(rng);
  std::vector<double> out(std::size_t(w) * h);
  for (int y = 0; y < h; ++y) {
    const double fy = double(y) / cell;
    const int y0 = int(fy);
    const double ty = fy - y0;
    for (int x = 0; x < w; ++x) {
      const double fx = double(x) / cell;
      const int x0 = int(fx);
      const double tx = fx - x0;
      const double a = grid[std::size_t(y0) * gw + x0];
      const double b = grid[std::size_t(y0) * gw + x0 + 1];
      const double c = grid[std::size_t(y0 + 1) * gw + x0];
      const double d = grid[std::size_t(y0 + 1) * gw + x0 + 1];
      out[std::size_t(y) * w + x] =
          (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
    }
  }
  return out;
}

// Photograph-like content: octaves of value noise over smooth geometry,
// with mildly varying chroma. The octave mix matters: too much fine grain
// saturates the unique-gradient count and a JPEG ladder stops being
// monotone, so the texture lives mostly in the low and mid frequencies the
// way camera output does.
inline RgbImage photo_fixture(int id, int w, int h) {
  std::mt19937 rng(0x9E3779B9u + std::uint32_t(id) * 0x85EBCA6Bu);
  std::vector<std::vector<double>> octaves;
  const double amps[3] = {1.0, 0.35, 0.1};
  const int cells[3] = {120, 40, 14};
  for (int o = 0; o < 3; ++o) {
    octaves.push_back(noise_octave(w, h, cells[o], rng));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double phase_x = unit(rng) * 6.283;
  const double phase_y = unit(rng) * 6.283;
  const double freq_x = 1.5 + 3.0 * unit(rng);
  const double freq_y = 1.5 + 3.0 * unit(rng);
  const double cx = w * (0.3 + 0.4 * unit(rng));
  const double cy = h * (0.3 + 0.4 * unit(rng));
  const double radius = 0.25 * std::min(w, h) * (0.6 + 0.8 * unit(rng));

  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      double norm = 0.0;
      for (int o = 0; o < 3; ++o) {
        v += amps[o] * octaves[o][std::size_t(y) * w + x];
        norm += amps[o];
      }
      v /= norm;
      const double wave =
          0.5 + 0.5 * std::sin(freq_x * 6.283 * x / w + phase_x) *
                    std::cos(freq_y * 6.283 * y / h + phase_y);
      const double dx = x - cx;
      const double dy = y - cy;
      const double blob =
          std::exp(-(dx * dx + dy * dy) / (2.0 * radius * radius));
      const double luma = 0.55 * v + 0.25 * wave + 0.2 * blob;
      const double chroma_u = (octaves[1][std::size_t(y) * w + x] - 0.5) * 0.4;
      const double chroma_v = (octaves[2][std::size_t(y) * w + x] - 0.5) * 0.4;
      auto to_byte = [](double f) {
        return std::uint8_t(std::clamp(int(std::lround(f * 255.0)), 0, 255));
      };
      img.at(x, y) = {to_byte(luma + 0.35 * chroma_v),
                      to_byte(luma - 0.15 * chroma_u - 0.1 * chroma_v),
                      to_byte(luma + 0.45 * chroma_u)};
    }
  }
  return img;
}

inline RgbImage shift_brightness(const RgbImage& img, int k) {
  RgbImage out = img;
  for (auto& p : out.pixels) {
    p.r = std::uint8_t(p.r + k);
    p.g = std::uint8_t(p.g + k);
    p.b = std::uint8_t(p.b + k);
  }
  return out;
}

// Random image whose channels stay within [margin, 255 - margin] so a
// brightness shift cannot clip.
inline RgbImage random_rgb_with_margin(int w, int h, std::uint32_t seed,
                                       int margin) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(margin, 255 - margin);
  RgbImage img(w, h);
  for (auto& p : img.pixels) {
    p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)),
         std::uint8_t(byte(rng))};
  }
  return img;
}

}  // namespace mug::testing

#endif  // MUG_TESTS_FIXTURES_HPP_
