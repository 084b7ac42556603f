// lipper/nn/adam.h

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

#ifndef LIPPER_NN_ADAM_H_
#define LIPPER_NN_ADAM_H_

#include <cstdint>

#include "lipper/nn/network.h"

namespace lipper {

struct AdamState {
  int64_t step = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  Gradients m;  // first moments, parameter layout
  Gradients v;  // second moments

  /// Zeroed moments shaped like the network's parameters; step = 0.
  static AdamState For(const Network &net, double lr = 1e-3);
  /// Throws ShapeError unless m and v match the network's parameters.
  void CheckCompatible(const Network &net) const;
};

/// One bias-corrected Adam update of every parameter of `net`.
void AdamStep(Network *net, const Gradients &grads, AdamState *state);

}  // namespace lipper

#endif  // LIPPER_NN_ADAM_H_
