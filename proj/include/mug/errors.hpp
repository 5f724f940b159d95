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

#ifndef MUG_ERRORS_HPP_
#define MUG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mug {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Image smaller than the 3x3 gradient window.
class ImageTooSmall : public Error {
 public:
  using Error::Error;
};

// Container magic bytes not recognized, or a feature we do not decode.
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

// Recognized container, broken payload.
class CorruptStream : public Error {
 public:
  using Error::Error;
};

class QualityOutOfRange : public Error {
 public:
  using Error::Error;
};

class CropTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

// Manifest / CSV parse failure; message carries the 1-based line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

class DuplicatePath : public Error {
 public:
  using Error::Error;
};

// Correlation input too short, mismatched, or constant.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class GroupTooSmall : public Error {
 public:
  using Error::Error;
};

// No optimizer start reached a finite optimum.
class FitDivergence : public Error {
 public:
  using Error::Error;
};

// Spectrum with a single value has no defined standard deviation.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

}  // namespace mug

#endif  // MUG_ERRORS_HPP_
