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

#include "mug/image_io.hpp"

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "mug/errors.hpp"

namespace mug {
namespace {

// ---------------------------------------------------------------------------
// JPEG via libjpeg. Decode errors longjmp out of the library, so everything
// heap-allocated around the codec lives in RAII wrappers.

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RgbImage decode_jpeg(const std::vector<std::uint8_t>& bytes) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;

  RgbImage img;
  std::vector<std::uint8_t> row;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw CorruptStream(std::string("JPEG decode failed: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), bytes.size());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  img.width = int(cinfo.output_width);
  img.height = int(cinfo.output_height);
  img.pixels.resize(std::size_t(img.width) * img.height);
  row.resize(std::size_t(img.width) * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    const int y = int(cinfo.output_scanline);
    JSAMPROW rows[1] = {row.data()};
    jpeg_read_scanlines(&cinfo, rows, 1);
    for (int x = 0; x < img.width; ++x) {
      img.at(x, y) = {row[3 * x], row[3 * x + 1], row[3 * x + 2]};
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

// ---------------------------------------------------------------------------
// PNG via the libpng simplified API.

RgbImage decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw CorruptStream(std::string("PNG decode failed: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw CorruptStream("PNG decode failed: " + message);
  }
  RgbImage img(int(image.width), int(image.height));
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
  }
  return img;
}

std::vector<std::uint8_t> encode_png_bytes(const RgbImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(img.width);
  image.height = png_uint_32(img.height);
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> raw(std::size_t(img.width) * img.height * 3);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    raw[3 * i] = img.pixels[i].r;
    raw[3 * i + 1] = img.pixels[i].g;
    raw[3 * i + 2] = img.pixels[i].b;
  }
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, raw.data(), 0,
                                 nullptr)) {
    throw Error(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, raw.data(), 0,
                                 nullptr)) {
    throw Error(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

// ---------------------------------------------------------------------------
// BMP: uncompressed 24/32-bit BITMAPINFOHEADER files, top-down or bottom-up.

std::uint32_t read_u32le(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

std::uint16_t read_u16le(const std::uint8_t* p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

RgbImage decode_bmp(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 54) throw CorruptStream("BMP: truncated header");
  const std::uint32_t pixel_offset = read_u32le(&bytes[10]);
  const std::uint32_t header_size = read_u32le(&bytes[14]);
  if (header_size < 40) throw UnsupportedFormat("BMP: pre-BITMAPINFOHEADER file");
  const std::int32_t width = std::int32_t(read_u32le(&bytes[18]));
  const std::int32_t height_raw = std::int32_t(read_u32le(&bytes[22]));
  const std::uint16_t bpp = read_u16le(&bytes[28]);
  const std::uint32_t compression = read_u32le(&bytes[30]);
  if (compression != 0) throw UnsupportedFormat("BMP: compressed variant");
  if (bpp != 24 && bpp != 32) {
    throw UnsupportedFormat("BMP: only 24/32-bit supported");
  }
  const bool top_down = height_raw < 0;
  const std::int32_t height = top_down ? -height_raw : height_raw;
  if (width <= 0 || height <= 0) throw CorruptStream("BMP: bad dimensions");
  const std::size_t bytes_per_px = bpp / 8;
  const std::size_t stride = (std::size_t(width) * bytes_per_px + 3) & ~std::size_t(3);
  if (bytes.size() < pixel_offset + stride * std::size_t(height)) {
    throw CorruptStream("BMP: truncated pixel data");
  }
  RgbImage img(width, height);
  for (std::int32_t y = 0; y < height; ++y) {
    const std::int32_t src_y = top_down ? y : height - 1 - y;
    const std::uint8_t* row = bytes.data() + pixel_offset + stride * std::size_t(src_y);
    for (std::int32_t x = 0; x < width; ++x) {
      const std::uint8_t* p = row + bytes_per_px * std::size_t(x);
      img.at(x, y) = {p[2], p[1], p[0]};  // BGR order on disk
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// Binary PGM (P5), maxval <= 255.

RgbImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 2;  // past "P5"
  auto next_token = [&]() -> long {
    while (pos < bytes.size()) {
      if (std::isspace(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    long value = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any) throw CorruptStream("PGM: malformed header");
    return value;
  };
  const long width = next_token();
  const long height = next_token();
  const long maxval = next_token();
  if (width <= 0 || height <= 0) throw CorruptStream("PGM: bad dimensions");
  if (maxval <= 0 || maxval > 255) {
    throw UnsupportedFormat("PGM: only maxval <= 255 supported");
  }
  ++pos;  // single whitespace after maxval
  if (bytes.size() < pos + std::size_t(width) * std::size_t(height)) {
    throw CorruptStream("PGM: truncated pixel data");
  }
  RgbImage img(static_cast<int>(width), static_cast<int>(height));
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const std::uint8_t v = bytes[pos + i];
    img.pixels[i] = {v, v, v};
  }
  return img;
}

}  // namespace

ImageFormat detect_format(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
    return ImageFormat::kJpeg;
  }
  static const std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G',
                                            '\r', '\n', 0x1A, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0) {
    return ImageFormat::kPng;
  }
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    return ImageFormat::kBmp;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return ImageFormat::kPgm;
  }
  throw UnsupportedFormat("unrecognized image container");
}

RgbImage decode(const std::vector<std::uint8_t>& bytes) {
  switch (detect_format(bytes)) {
    case ImageFormat::kJpeg:
      return decode_jpeg(bytes);
    case ImageFormat::kPng:
      return decode_png(bytes);
    case ImageFormat::kBmp:
      return decode_bmp(bytes);
    case ImageFormat::kPgm:
      return decode_pgm(bytes);
  }
  throw UnsupportedFormat("unrecognized image container");
}

RgbImage decode(const EncodedImage& encoded) { return decode(encoded.bytes); }

RgbImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode(bytes);
}

EncodedImage encode_jpeg(const RgbImage& img, int quality) {
  if (quality < 1 || quality > 100) {
    throw QualityOutOfRange("JPEG quality must be in [1, 100], got " +
                            std::to_string(quality));
  }
  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;

  unsigned char* buffer = nullptr;
  unsigned long buffer_size = 0;
  std::vector<std::uint8_t> row(std::size_t(img.width) * 3);
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (buffer) free(buffer);
    throw Error(std::string("JPEG encode failed: ") + err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
  cinfo.image_width = JDIMENSION(img.width);
  cinfo.image_height = JDIMENSION(img.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE /* baseline-compatible tables */);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    const int y = int(cinfo.next_scanline);
    for (int x = 0; x < img.width; ++x) {
      const Rgb8 p = img.at(x, y);
      row[3 * x] = p.r;
      row[3 * x + 1] = p.g;
      row[3 * x + 2] = p.b;
    }
    JSAMPROW rows[1] = {row.data()};
    jpeg_write_scanlines(&cinfo, rows, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  EncodedImage out;
  out.format = ImageFormat::kJpeg;
  out.bytes.assign(buffer, buffer + buffer_size);
  free(buffer);
  return out;
}

EncodedImage encode_png(const RgbImage& img) {
  EncodedImage out;
  out.format = ImageFormat::kPng;
  out.bytes = encode_png_bytes(img);
  return out;
}

void save_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw Error("cannot open " + path + " for writing");
  outf.write(reinterpret_cast<const char*>(bytes.data()),
             std::streamsize(bytes.size()));
  if (!outf) throw Error("write failed: " + path);
}

RgbImage crop_border(const RgbImage& img, int k) {
  if (k < 0 || img.width <= 2 * k || img.height <= 2 * k) {
    throw CropTooLarge("cannot crop " + std::to_string(k) + " px from a " +
                       std::to_string(img.width) + "x" +
                       std::to_string(img.height) + " image");
  }
  RgbImage out(img.width - 2 * k, img.height - 2 * k);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.at(x, y) = img.at(x + k, y + k);
    }
  }
  return out;
}

RgbImage synthesize_chessboard(int size, int block, int lo, int hi) {
  if (size <= 0 || block <= 0 || size % block != 0) {
    throw InvalidGeometry("block size " + std::to_string(block) +
                          " must evenly divide image size " +
                          std::to_string(size));
  }
  if (lo < 0 || lo > 255 || hi < 0 || hi > 255) {
    throw InvalidGeometry("intensities must be within [0, 255]");
  }
  RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const bool odd = ((x / block) + (y / block)) % 2 != 0;
      const std::uint8_t v = std::uint8_t(odd ? hi : lo);
      img.at(x, y) = {v, v, v};
    }
  }
  return img;
}

}  // namespace mug
