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

#include "mug/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "mug/errors.hpp"

namespace mug {
namespace {

// Parallelizing tiny images costs more than it saves.
constexpr std::int64_t kParallelThreshold = 1 << 14;

// LSD radix sort on u64 keys, 8-bit digits. Nonnegative doubles compare
// like their bit patterns, so this sorts gradient magnitudes directly.
// All digit histograms are gathered in one sweep; passes whose digit is
// constant across the input are skipped (common here: magnitudes occupy a
// narrow exponent range, so the high bytes rarely vary).
void radix_sort_u64(std::vector<std::uint64_t>& keys) {
  const std::size_t n = keys.size();
  if (n < 2) return;
  std::size_t hist[8][256] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t k = keys[i];
    for (int pass = 0; pass < 8; ++pass) ++hist[pass][(k >> (pass * 8)) & 0xFF];
  }
  std::vector<std::uint64_t> tmp(n);
  std::uint64_t* src = keys.data();
  std::uint64_t* dst = tmp.data();
  for (int pass = 0; pass < 8; ++pass) {
    const std::size_t* h = hist[pass];
    const int shift = pass * 8;
    bool constant_digit = false;
    for (int b = 0; b < 256; ++b) {
      if (h[b] == n) {
        constant_digit = true;
        break;
      }
      if (h[b] != 0) break;
    }
    if (constant_digit) continue;
    std::size_t offsets[256];
    std::size_t sum = 0;
    for (int b = 0; b < 256; ++b) {
      offsets[b] = sum;
      sum += h[b];
    }
    for (std::size_t i = 0; i < n; ++i) {
      dst[offsets[(src[i] >> shift) & 0xFF]++] = src[i];
    }
    std::swap(src, dst);
  }
  if (src != keys.data()) {
    std::memcpy(keys.data(), src, n * sizeof(std::uint64_t));
  }
}

// One Scharr tap pair. The summation order is pinned: it must match a
// row-major accumulation over the 3x3 kernels bit for bit (the serial
// reference relies on that), so do not refactor these expressions.
inline double scharr_gx(const double* r0, const double* r1, const double* r2,
                        int x) {
  return 3.0 * r0[x - 1] - 3.0 * r0[x + 1] + 10.0 * r1[x - 1] -
         10.0 * r1[x + 1] + 3.0 * r2[x - 1] - 3.0 * r2[x + 1];
}

inline double scharr_gy(const double* r0, const double* /*r1*/,
                        const double* r2, int x) {
  return 3.0 * r0[x - 1] + 10.0 * r0[x] + 3.0 * r0[x + 1] - 3.0 * r2[x - 1] -
         10.0 * r2[x] - 3.0 * r2[x + 1];
}

void require_window_fits(int width, int height) {
  if (width < 3 || height < 3) {
    throw ImageTooSmall("image must be at least 3x3 for the gradient window, got " +
                        std::to_string(width) + "x" + std::to_string(height));
  }
}

// Post-spectrum scalar stage shared by both score_image overloads.
MetricResult finish_scores(const UniqueGradientSpectrum& spec) {
  MetricResult r;
  r.nug = spec.nug();
  r.mug = mug_score(spec);
  const MugPlusScore mp = mug_plus_score(spec);
  r.mug_plus = mp.mug_plus;
  r.n_available = mp.n_available;
  return r;
}

// Sample standard deviation over the spectrum values, fixed left-to-right
// accumulation so every caller sees identical bits.
double sample_stddev(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += v[i];
  const double mean = sum / static_cast<double>(n);
  double ssd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = v[i] - mean;
    ssd += d * d;
  }
  return std::sqrt(ssd / static_cast<double>(n - 1));
}

// 1-based lower-median index, clamped to the first entry.
std::int64_t median_index(std::int64_t nug) {
  return std::max<std::int64_t>(1, nug / 2);
}

// Number of distinct probe indices max(1, floor(nug / i)), i = 2..M+1.
// A pure function of nug; the index sequence is non-increasing in i, so
// counting steps suffices.
int available_count(std::int64_t nug) {
  int distinct = 0;
  std::int64_t prev = -1;
  for (int i = 2; i <= kSpectrumDepth + 1; ++i) {
    const std::int64_t idx = std::max<std::int64_t>(1, nug / i);
    if (idx != prev) {
      ++distinct;
      prev = idx;
    }
  }
  return distinct;
}

int divisor_for(std::int64_t nug) {
  return kSpectrumDepth - available_count(nug) + 1;
}

// Rounds the significand of `value` to the nearest multiple of the odd part
// of `divisor` (a change of at most a few ulps). The quotient value/divisor
// is then exactly representable, so value / (value / divisor) == divisor
// holds in double arithmetic with no rounding anywhere.
double snap_to_divisor_multiple(double value, int divisor) {
  int odd = divisor;
  while (odd % 2 == 0) odd /= 2;
  if (odd == 1 || value == 0.0) return value;
  int exp = 0;
  const double frac = std::frexp(value, &exp);
  const std::int64_t sig = std::llround(frac * 9007199254740992.0);  // 2^53
  const std::int64_t rem = sig % odd;
  if (rem == 0) return value;
  const std::int64_t down = sig - rem;
  const std::int64_t up = down + odd;
  std::int64_t snapped = (rem <= odd - rem) ? down : up;
  if (snapped >= (std::int64_t{1} << 53)) snapped = down;
  return std::ldexp(static_cast<double>(snapped), exp - 53);
}

}  // namespace

LuminanceImage rgb_to_luminance(const RgbImage& img) {
  LuminanceImage out(img.width, img.height);
  const std::int64_t n = static_cast<std::int64_t>(img.pixels.size());
  const Rgb8* px = img.pixels.data();
  double* lum = out.values.data();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    const int num = 6 * px[i].r + 63 * px[i].g + 27 * px[i].b;
    lum[i] = num / 100.0;
  }
  return out;
}

GradientField scharr_gradients(const LuminanceImage& img) {
  require_window_fits(img.width, img.height);
  GradientField field;
  field.width = img.width - 2;
  field.height = img.height - 2;
  const std::size_t n = std::size_t(field.width) * field.height;
  field.gx.resize(n);
  field.gy.resize(n);
  field.magnitude.resize(n);
  const int w = img.width;
  const double* lum = img.values.data();
#pragma omp parallel for schedule(static) \
    if (std::int64_t(n) >= kParallelThreshold)
  for (int y = 1; y < img.height - 1; ++y) {
    const double* r0 = lum + std::size_t(y - 1) * w;
    const double* r1 = lum + std::size_t(y) * w;
    const double* r2 = lum + std::size_t(y + 1) * w;
    std::size_t out = std::size_t(y - 1) * field.width;
    for (int x = 1; x < w - 1; ++x, ++out) {
      const double gx = scharr_gx(r0, r1, r2, x);
      const double gy = scharr_gy(r0, r1, r2, x);
      field.gx[out] = gx;
      field.gy[out] = gy;
      field.magnitude[out] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return field;
}

UniqueGradientSpectrum unique_gradient_spectrum(const GradientField& field) {
  const std::size_t n = field.magnitude.size();
  std::vector<std::uint64_t> keys(n);
  const double* mag = field.magnitude.data();
#pragma omp parallel for schedule(static) \
    if (std::int64_t(n) >= kParallelThreshold)
  for (std::int64_t i = 0; i < std::int64_t(n); ++i) {
    keys[i] = std::bit_cast<std::uint64_t>(mag[i]);
  }
  radix_sort_u64(keys);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  UniqueGradientSpectrum spec;
  spec.values.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    spec.values[i] = std::bit_cast<double>(keys[i]);
  }
  return spec;
}

std::vector<double> normalize_spectrum(const UniqueGradientSpectrum& spec) {
  if (spec.nug() < 2) {
    throw DegenerateSpectrum(
        "spectrum with fewer than 2 values has no standard deviation");
  }
  const double scale = std::sqrt(sample_stddev(spec.values));
  std::vector<double> out(spec.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = spec.values[i] / scale;
  }
  return out;
}

double mug_score(const UniqueGradientSpectrum& spec) {
  const std::int64_t nug = spec.nug();
  if (nug <= 1) return 0.0;  // constant image: no blockiness evidence
  const double scale = std::sqrt(sample_stddev(spec.values));
  const double median = spec.values[median_index(nug) - 1] / scale;
  return snap_to_divisor_multiple(median / static_cast<double>(nug),
                                  divisor_for(nug));
}

MugPlusScore mug_plus_score(const UniqueGradientSpectrum& spec) {
  const std::int64_t nug = std::max<std::int64_t>(1, spec.nug());
  MugPlusScore out;
  out.n_available = available_count(nug);
  // Exact: mug_score snapped its significand to a multiple of the divisor.
  out.mug_plus = mug_score(spec) / divisor_for(nug);
  return out;
}

MetricResult score_image(const RgbImage& img) {
  require_window_fits(img.width, img.height);
  const int w = img.width;
  const int h = img.height;
  // Luminance on the integer lattice 6R + 63G + 27B (the x100 numerator).
  // Scharr responses and the squared magnitude stay exact integers, so the
  // spectrum is immune to summation order and to constant channel shifts.
  std::vector<std::int32_t> lat(std::size_t(w) * h);
  const Rgb8* px = img.pixels.data();
  const std::int64_t npx = static_cast<std::int64_t>(lat.size());
#pragma omp parallel for schedule(static) if (npx >= kParallelThreshold)
  for (std::int64_t i = 0; i < npx; ++i) {
    lat[i] = 6 * px[i].r + 63 * px[i].g + 27 * px[i].b;
  }

  const std::size_t interior = std::size_t(w - 2) * (h - 2);
  std::vector<std::uint64_t> keys(interior);
#pragma omp parallel for schedule(static) \
    if (std::int64_t(interior) >= kParallelThreshold)
  for (int y = 1; y < h - 1; ++y) {
    const std::int32_t* r0 = lat.data() + std::size_t(y - 1) * w;
    const std::int32_t* r1 = lat.data() + std::size_t(y) * w;
    const std::int32_t* r2 = lat.data() + std::size_t(y + 1) * w;
    std::size_t out = std::size_t(y - 1) * (w - 2);
    for (int x = 1; x < w - 1; ++x, ++out) {
      const std::int64_t gx = 3 * (r0[x - 1] - r0[x + 1]) +
                              10 * (r1[x - 1] - r1[x + 1]) +
                              3 * (r2[x - 1] - r2[x + 1]);
      const std::int64_t gy = 3 * (r0[x - 1] - r2[x - 1]) +
                              10 * (r0[x] - r2[x]) + 3 * (r0[x + 1] - r2[x + 1]);
      keys[out] = static_cast<std::uint64_t>(gx * gx + gy * gy);
    }
  }
  radix_sort_u64(keys);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  UniqueGradientSpectrum spec;
  spec.values.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    // Exact up to the final two roundings; consecutive squared magnitudes
    // are far wider apart than a ulp, so values stay strictly ascending.
    spec.values[i] = std::sqrt(static_cast<double>(keys[i])) / 100.0;
  }
  return finish_scores(spec);
}

MetricResult score_image(const LuminanceImage& img) {
  require_window_fits(img.width, img.height);
  const int w = img.width;
  const int h = img.height;
  const std::size_t interior = std::size_t(w - 2) * (h - 2);
  std::vector<std::uint64_t> keys(interior);
  const double* lum = img.values.data();
#pragma omp parallel for schedule(static) \
    if (std::int64_t(interior) >= kParallelThreshold)
  for (int y = 1; y < h - 1; ++y) {
    const double* r0 = lum + std::size_t(y - 1) * w;
    const double* r1 = lum + std::size_t(y) * w;
    const double* r2 = lum + std::size_t(y + 1) * w;
    std::size_t out = std::size_t(y - 1) * (w - 2);
    for (int x = 1; x < w - 1; ++x, ++out) {
      const double gx = scharr_gx(r0, r1, r2, x);
      const double gy = scharr_gy(r0, r1, r2, x);
      keys[out] = std::bit_cast<std::uint64_t>(std::sqrt(gx * gx + gy * gy));
    }
  }
  radix_sort_u64(keys);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  UniqueGradientSpectrum spec;
  spec.values.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    spec.values[i] = std::bit_cast<double>(keys[i]);
  }
  return finish_scores(spec);
}

}  // namespace mug
