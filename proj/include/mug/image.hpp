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

#ifndef MUG_IMAGE_HPP_
#define MUG_IMAGE_HPP_

#include <cstdint>
#include <vector>

namespace mug {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

// 8-bit color image, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb8> pixels;  // size == width * height

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), pixels(size_t(w) * size_t(h)) {}

  Rgb8& at(int x, int y) { return pixels[size_t(y) * width + x]; }
  const Rgb8& at(int x, int y) const { return pixels[size_t(y) * width + x]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Real-valued luminance plane, values in [0, 255], row-major.
struct LuminanceImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // size == width * height

  LuminanceImage() = default;
  LuminanceImage(int w, int h)
      : width(w), height(h), values(size_t(w) * size_t(h), 0.0) {}

  double& at(int x, int y) { return values[size_t(y) * width + x]; }
  double at(int x, int y) const { return values[size_t(y) * width + x]; }
};

}  // namespace mug

#endif  // MUG_IMAGE_HPP_
