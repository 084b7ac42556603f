// lipper/nn/checkpoint.h

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

#ifndef LIPPER_NN_CHECKPOINT_H_
#define LIPPER_NN_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "lipper/nn/adam.h"
#include "lipper/nn/network.h"

namespace lipper {

/// Binary layout, little-endian:
///   "LPR1", u32 layer count, then per layer
///     u32 kind, u32 n_hyper, f64 hyper[n_hyper],
///     u32 n_params, per param: u32 rank, u32 dims[rank], f64 data[];
///   u8 has_adam, and if set: i64 step, f64 lr, beta1, beta2, epsilon, then
///   m and v in parameter order (data only).
struct Checkpoint {
  Network network;
  std::optional<AdamState> adam;
};

void WriteCheckpoint(std::ostream &os, const Network &net, const AdamState *adam = nullptr);
void WriteCheckpoint(const std::filesystem::path &path, const Network &net,
                     const AdamState *adam = nullptr);
/// Throws FormatError on a bad magic, truncation or inconsistent shapes.
Checkpoint ReadCheckpoint(std::istream &is);
Checkpoint ReadCheckpoint(const std::filesystem::path &path);

}  // namespace lipper

#endif  // LIPPER_NN_CHECKPOINT_H_
