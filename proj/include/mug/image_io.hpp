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
// Image containers (baseline JPEG, PNG, BMP, binary PGM), border cropping
// for the misalignment protocol, and synthetic fixtures.

#ifndef MUG_IMAGE_IO_HPP_
#define MUG_IMAGE_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mug/image.hpp"

namespace mug {

enum class ImageFormat { kJpeg, kPng, kBmp, kPgm };

struct EncodedImage {
  std::vector<std::uint8_t> bytes;
  ImageFormat format = ImageFormat::kJpeg;
};

// Sniffs the container from magic bytes. Throws UnsupportedFormat.
ImageFormat detect_format(const std::vector<std::uint8_t>& bytes);

// Decodes JPEG/PNG/BMP/PGM to RGB. Grayscale sources are promoted by
// channel replication. Throws UnsupportedFormat or CorruptStream.
RgbImage decode(const std::vector<std::uint8_t>& bytes);
RgbImage decode(const EncodedImage& encoded);

// Reads a file and decodes it. Throws Error on I/O failure.
RgbImage load_image(const std::string& path);

// Baseline JPEG (JFIF) at the usual 1..100 quality-factor scaling of the
// example quantization tables. Throws QualityOutOfRange.
EncodedImage encode_jpeg(const RgbImage& img, int quality);

// Lossless PNG; decode(encode_png(img)) == img bit-exactly.
EncodedImage encode_png(const RgbImage& img);

void save_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

// Centered interior with k pixels removed from every border. k = 0 is the
// identity. Throws CropTooLarge unless width > 2k and height > 2k.
RgbImage crop_border(const RgbImage& img, int k);

// Alternating lo/hi square blocks, top-left block = lo, replicated into all
// three channels. Throws InvalidGeometry unless block divides size and the
// intensities are within 8-bit range.
RgbImage synthesize_chessboard(int size, int block, int lo, int hi);

}  // namespace mug

#endif  // MUG_IMAGE_IO_HPP_
