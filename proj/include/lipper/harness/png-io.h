// lipper/harness/png-io.h

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

#ifndef LIPPER_HARNESS_PNG_IO_H_
#define LIPPER_HARNESS_PNG_IO_H_

#include <filesystem>

#include "lipper/base/image.h"

namespace lipper {

/// 8-bit grayscale PNG.  Writing is deterministic for a given image.
void WritePng(const std::filesystem::path &path, const GrayImage &image);
/// Reads any PNG libpng understands and converts it to 8-bit gray.  Throws
/// IngestError naming the path on failure.
GrayImage ReadPng(const std::filesystem::path &path);

}  // namespace lipper

#endif  // LIPPER_HARNESS_PNG_IO_H_
