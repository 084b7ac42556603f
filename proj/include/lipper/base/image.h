// lipper/base/image.h

// Copyright 2026  The Lipper Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LIPPER_BASE_IMAGE_H_
#define LIPPER_BASE_IMAGE_H_

#include <cstdint>
#include <vector>

namespace lipper {

/// 8-bit grayscale image, row-major.  Pixel intensities map to [0, 1] as
/// value / 255.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  uint8_t &at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  double Intensity(int x, int y) const { return at(x, y) / 255.0; }

  bool operator==(const GrayImage &other) const = default;
};

}  // namespace lipper

#endif  // LIPPER_BASE_IMAGE_H_
