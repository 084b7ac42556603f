// lipper/harness/config.h

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

#ifndef LIPPER_HARNESS_CONFIG_H_
#define LIPPER_HARNESS_CONFIG_H_

#include <filesystem>

#include "lipper/harness/toml-lite.h"
#include "lipper/recon/reconstructor.h"

namespace lipper {

/// Settings read from a config file.  Recognized keys:
///   [codec]    sample_rate, lpc_order, subframes
///   [training] lr, epochs, finetune_epochs, batch, seed
///   [corpus]   fps
///   [model]    channels (six widths), gru1, gru2
/// Unknown keys throw FormatError.
struct LipperConfig {
  ReconstructorConfig model;
  double fps = 30.0;
};

void ApplyConfig(const TomlDocument &doc, LipperConfig *config);
LipperConfig LoadConfig(const std::filesystem::path &path);

}  // namespace lipper

#endif  // LIPPER_HARNESS_CONFIG_H_
